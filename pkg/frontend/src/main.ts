// Wiring: one root element re-rendered per state change, event delegation for
// clicks, draft_id kept in the URL hash so a reload resumes from get_state.

import { ApiError, DraftApi, resolveApiBase } from './api.js';
import {
  applySnapshot,
  beginPick,
  canPick,
  clearSuggestions,
  failAction,
  initialState,
  setSuggestions,
  type AppState,
} from './state.js';
import type { CardInfo } from './types.js';
import { AGENT_CHOICES, render } from './ui.js';

const root = document.getElementById('app')!;
const api = new DraftApi(resolveApiBase(window.location));

let state: AppState = initialState();
let catalog: CardInfo[] = [];
let setCode = '';
let agents: string[] = new Array(7).fill(AGENT_CHOICES[0]);

function update(next: AppState): void {
  state = next;
  if (state.view) {
    window.location.hash = state.view.draft_id;
  }
  root.innerHTML = render(state, catalog, agents);
}

function message(error: unknown): string {
  if (error instanceof ApiError) return `${error.code}: ${error.message}`;
  return error instanceof Error ? error.message : String(error);
}

async function refreshSuggestions(agent: string): Promise<void> {
  const view = state.view;
  if (!view || view.pick === null) return;
  try {
    const response = await api.suggestions(view.draft_id, agent);
    update(setSuggestions({ ...state, suggestionAgent: agent }, agent, response.pick, response.scores));
  } catch (error) {
    update(failAction(state, message(error)));
  }
}

async function submitPick(card: number): Promise<void> {
  const view = state.view;
  if (!view || view.pick === null || !canPick(state)) return;
  const agent = state.suggestionAgent;
  update(beginPick(state));
  try {
    const next = await api.submitPick(view.draft_id, card, view.pick);
    update(applySnapshot(state, next));
  } catch (error) {
    if (error instanceof ApiError && error.code === 'stale_pick') {
      // the pick landed but the response was lost; resync instead of failing
      update(applySnapshot(state, await api.state(view.draft_id)));
    } else {
      update(failAction(state, message(error)));
      return;
    }
  }
  if (agent && state.phase === 'drafting') {
    await refreshSuggestions(agent);
  }
}

async function startDraft(): Promise<void> {
  const seedInput = document.getElementById('seed') as HTMLInputElement | null;
  const seedText = seedInput?.value.trim() ?? '';
  const seed = seedText === '' ? undefined : Number(seedText);
  if (seed !== undefined && !Number.isInteger(seed)) {
    update(failAction(state, 'seed must be an integer'));
    return;
  }
  try {
    const view = await api.createDraft(agents, seed, setCode);
    update(applySnapshot(state, view));
  } catch (error) {
    update(failAction(state, message(error)));
  }
}

async function downloadLog(): Promise<void> {
  const view = state.view;
  if (!view) return;
  try {
    const text = await api.downloadLog(view.draft_id);
    const blob = new Blob([text], { type: 'application/x-ndjson' });
    const link = document.createElement('a');
    link.href = URL.createObjectURL(blob);
    link.download = `draft-${view.draft_id}.jsonl`;
    link.click();
    URL.revokeObjectURL(link.href);
  } catch (error) {
    update(failAction(state, message(error)));
  }
}

root.addEventListener('click', (event) => {
  const target = (event.target as HTMLElement).closest('[data-card], button');
  if (!target) return;
  const cardAttr = target.getAttribute('data-card');
  if (cardAttr !== null) {
    void submitPick(Number(cardAttr));
    return;
  }
  switch (target.id) {
    case 'start':
      void startDraft();
      return;
    case 'download':
      void downloadLog();
      return;
    case 'again':
      window.location.hash = '';
      update({ ...initialState() });
      return;
    case 'suggest-off':
      update(clearSuggestions(state));
      return;
  }
  const agent = target.getAttribute('data-agent');
  if (agent) void refreshSuggestions(agent);
});

root.addEventListener('change', (event) => {
  const select = event.target as HTMLSelectElement;
  const slot = select.getAttribute('data-slot');
  if (slot !== null) {
    agents = agents.map((value, i) => (i === Number(slot) ? select.value : value));
  }
});

async function boot(): Promise<void> {
  try {
    const sets = await api.sets();
    const first = sets[0];
    if (!first) throw new Error('service has no sets loaded');
    catalog = first.cards;
    setCode = first.code;
  } catch (error) {
    root.innerHTML = `<section class="panel"><p class="error">cannot reach the draft
      service at ${api.base}: ${message(error)}</p>
      <p>start it with <code>draftbench serve --set DESK --port 8100</code> or pass
      <code>?api=http://host:port</code>.</p></section>`;
    return;
  }
  const resume = window.location.hash.replace(/^#/, '');
  if (resume) {
    try {
      update(applySnapshot(state, await api.state(resume)));
      return;
    } catch {
      window.location.hash = ''; // stale id; fall through to the start form
    }
  }
  update(state);
}

void boot();
