// Client view-model: a pure projection of the last service snapshot plus the
// one in-flight action. A page reload rebuilds the same state from get_state.

import type { DraftView, Suggestion } from './types.js';

export type Phase = 'setup' | 'drafting' | 'finished';

export interface AppState {
  phase: Phase;
  view: DraftView | null;
  busy: boolean; // a pick submission is in flight; the pack is locked
  error: string | null;
  suggestionAgent: string | null;
  suggestions: Suggestion[] | null; // for view.pick, when the overlay is on
}

export function initialState(): AppState {
  return {
    phase: 'setup',
    view: null,
    busy: false,
    error: null,
    suggestionAgent: null,
    suggestions: null,
  };
}

export function applySnapshot(state: AppState, view: DraftView): AppState {
  return {
    ...state,
    phase: view.status === 'finished' ? 'finished' : 'drafting',
    view,
    busy: false,
    error: null,
    suggestions: null, // stale for the new pick; refetched if the overlay is on
  };
}

export function beginPick(state: AppState): AppState {
  return { ...state, busy: true, error: null };
}

export function failAction(state: AppState, message: string): AppState {
  return { ...state, busy: false, error: message };
}

export function setSuggestions(
  state: AppState,
  agent: string,
  forPick: number,
  scores: Suggestion[],
): AppState {
  if (state.view === null || state.view.pick !== forPick) {
    return state; // a pick landed while the request was in flight; drop it
  }
  return { ...state, suggestionAgent: agent, suggestions: scores };
}

export function clearSuggestions(state: AppState): AppState {
  return { ...state, suggestionAgent: null, suggestions: null };
}

export function canPick(state: AppState): boolean {
  return state.phase === 'drafting' && !state.busy && state.view !== null;
}

/** Highest score per card for the badge overlay. */
export function suggestionByCard(state: AppState): Map<number, number> {
  const byCard = new Map<number, number>();
  for (const entry of state.suggestions ?? []) {
    if (!byCard.has(entry.card)) {
      byCard.set(entry.card, entry.score);
    }
  }
  return byCard;
}
