// DOM rendering: HTML-string templates re-rendered from the app state.

import type { AppState } from './state.js';
import { canPick, suggestionByCard } from './state.js';
import type { CardInfo } from './types.js';
import { colorClass, groupCollection, manaSymbols, pickLabel, sortPack } from './format.js';

export const AGENT_CHOICES = ['draftsim', 'raredraft:1', 'random:1'];

function esc(text: string): string {
  return text.replace(/[&<>"']/g, (ch) => `&#${ch.charCodeAt(0)};`);
}

function cardChip(
  card: CardInfo,
  options: { clickable: boolean; copies?: number; badge?: number },
): string {
  const cls = colorClass(card);
  const copies = options.copies && options.copies > 1 ? `<span class="copies">x${options.copies}</span>` : '';
  const badge =
    options.badge !== undefined
      ? `<span class="badge" title="suggestion score">${options.badge.toFixed(2)}</span>`
      : '';
  const attrs = options.clickable ? `data-card="${card.index}" role="button" tabindex="0"` : '';
  return `
    <div class="card color-${cls}${options.clickable ? ' clickable' : ''}" ${attrs}>
      ${badge}
      <div class="card-name">${esc(card.name)}</div>
      <div class="card-meta">
        <span class="mana">${manaSymbols(card) || 'o'}</span>
        <span class="rarity rarity-${card.rarity}">${card.rarity}</span>
        <span class="strength">${card.strength.toFixed(1)}</span>
      </div>
      ${copies}
    </div>`;
}

export function renderSetup(agents: string[], error: string | null): string {
  const slots = agents
    .map(
      (value, i) => `
      <label>bot ${i + 1}
        <select data-slot="${i}">
          ${AGENT_CHOICES.map(
            (choice) =>
              `<option value="${choice}" ${choice === value ? 'selected' : ''}>${choice}</option>`,
          ).join('')}
        </select>
      </label>`,
    )
    .join('');
  return `
    <section class="panel">
      <h2>new draft</h2>
      <p>you take seat 0; seven bots fill the table. picks pass left, right, left.</p>
      <div class="slots">${slots}</div>
      <label class="seed">seed (optional) <input id="seed" inputmode="numeric" placeholder="random"></label>
      <button id="start">start draft</button>
      ${error ? `<p class="error">${esc(error)}</p>` : ''}
    </section>`;
}

export function renderDraft(state: AppState, catalog: CardInfo[]): string {
  const view = state.view;
  if (!view) return '';
  const badges = suggestionByCard(state);
  const clickable = canPick(state);
  const packCards = sortPack(view.pack, catalog)
    .map((index) => {
      const card = catalog[index];
      if (!card) return '';
      return cardChip(card, { clickable, badge: badges.get(index) });
    })
    .join('');
  const groups = [...groupCollection(view.collection, catalog).entries()]
    .map(
      ([cls, entries]) => `
      <div class="pool-group">
        <h4>${cls} (${entries.reduce((n, entry) => n + entry.copies, 0)})</h4>
        ${entries.map((entry) => cardChip(entry.card, { clickable: false, copies: entry.copies })).join('')}
      </div>`,
    )
    .join('');
  const suggestToggle = state.suggestionAgent
    ? `<button id="suggest-off">hide suggestions (${esc(state.suggestionAgent)})</button>`
    : AGENT_CHOICES.map(
        (agent) => `<button class="suggest" data-agent="${agent}">suggest: ${agent}</button>`,
      ).join('');
  return `
    <section class="panel">
      <div class="statusline">
        <strong>${pickLabel(view.pick)}</strong>
        <span>${state.busy ? 'submitting...' : 'your pick'}</span>
        <span class="draft-id">draft ${esc(view.draft_id)}</span>
      </div>
      ${state.error ? `<p class="error">${esc(state.error)}</p>` : ''}
      <div class="pack ${state.busy ? 'locked' : ''}">${packCards}</div>
      <div class="suggest-bar">${suggestToggle}</div>
      <h3>your pool (${view.collection.length})</h3>
      <div class="pool">${groups || '<p>nothing picked yet</p>'}</div>
    </section>`;
}

export function renderFinished(state: AppState, catalog: CardInfo[]): string {
  const view = state.view;
  if (!view) return '';
  const groups = [...groupCollection(view.collection, catalog).entries()]
    .map(
      ([cls, entries]) => `
      <div class="pool-group">
        <h4>${cls} (${entries.reduce((n, entry) => n + entry.copies, 0)})</h4>
        ${entries.map((entry) => cardChip(entry.card, { clickable: false, copies: entry.copies })).join('')}
      </div>`,
    )
    .join('');
  return `
    <section class="panel">
      <h2>draft complete</h2>
      <p>final pool of ${view.collection.length} cards. the log below contains all
         8 seats and validates against the draftbench log format.</p>
      <button id="download">download draft log (.jsonl)</button>
      <button id="again">draft again</button>
      ${state.error ? `<p class="error">${esc(state.error)}</p>` : ''}
      <div class="pool">${groups}</div>
    </section>`;
}

export function render(state: AppState, catalog: CardInfo[], agents: string[]): string {
  switch (state.phase) {
    case 'setup':
      return renderSetup(agents, state.error);
    case 'drafting':
      return renderDraft(state, catalog);
    case 'finished':
      return renderFinished(state, catalog);
  }
}
