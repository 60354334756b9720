// Presentation helpers shared by the DOM layer and the tests.

import type { CardInfo } from './types.js';

export const COLOR_LETTERS = ['W', 'U', 'B', 'R', 'G'] as const;

export type ColorClass = 'W' | 'U' | 'B' | 'R' | 'G' | 'M' | 'C';

export function colorClass(card: CardInfo): ColorClass {
  const lit = card.colors
    .map((n, i) => (n > 0 ? COLOR_LETTERS[i] : undefined))
    .filter((c): c is (typeof COLOR_LETTERS)[number] => c !== undefined);
  if (lit.length === 0) return 'C';
  if (lit.length === 1) return lit[0] ?? 'C';
  return 'M';
}

export function manaSymbols(card: CardInfo): string {
  let out = '';
  card.colors.forEach((n, i) => {
    out += (COLOR_LETTERS[i] ?? '?').repeat(n);
  });
  return out;
}

/** Collection indices (with repeats) -> per-color groups of (card, copies). */
export function groupCollection(
  collection: number[],
  catalog: CardInfo[],
): Map<ColorClass, { card: CardInfo; copies: number }[]> {
  const copies = new Map<number, number>();
  for (const index of collection) {
    copies.set(index, (copies.get(index) ?? 0) + 1);
  }
  const groups = new Map<ColorClass, { card: CardInfo; copies: number }[]>();
  const order: ColorClass[] = ['W', 'U', 'B', 'R', 'G', 'M', 'C'];
  for (const cls of order) groups.set(cls, []);
  for (const [index, count] of [...copies.entries()].sort((a, b) => a[0] - b[0])) {
    const card = catalog[index];
    if (!card) continue;
    groups.get(colorClass(card))!.push({ card, copies: count });
  }
  for (const cls of order) {
    if (groups.get(cls)!.length === 0) groups.delete(cls);
  }
  return groups;
}

export function pickLabel(pick: number | null): string {
  if (pick === null) return 'draft complete';
  const packNumber = Math.floor((pick - 1) / 15) + 1;
  const pickInPack = ((pick - 1) % 15) + 1;
  return `pick ${pick} / 45 (pack ${packNumber}, card ${pickInPack})`;
}

export function sortPack(pack: number[], catalog: CardInfo[]): number[] {
  return [...pack].sort((a, b) => {
    const ca = catalog[a];
    const cb = catalog[b];
    if (!ca || !cb) return a - b;
    if (ca.strength !== cb.strength) return cb.strength - ca.strength;
    return a - b;
  });
}
