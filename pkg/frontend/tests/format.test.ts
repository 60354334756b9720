import { describe, expect, it } from 'vitest';

import { colorClass, groupCollection, manaSymbols, pickLabel, sortPack } from '../src/format.js';
import type { CardInfo } from '../src/types.js';

function card(index: number, colors: number[], strength = 2.0, name?: string): CardInfo {
  return { index, name: name ?? `card-${index}`, rarity: 'common', colors, strength };
}

const catalog: CardInfo[] = [
  card(0, [1, 0, 0, 0, 0], 1.5),
  card(1, [0, 2, 0, 0, 0], 3.0),
  card(2, [0, 0, 0, 0, 0], 2.0),
  card(3, [1, 1, 0, 0, 0], 2.5),
  card(4, [0, 0, 0, 1, 0], 3.0),
];

describe('color helpers', () => {
  it('classifies mono, colorless, and multicolor', () => {
    expect(colorClass(catalog[0]!)).toBe('W');
    expect(colorClass(catalog[2]!)).toBe('C');
    expect(colorClass(catalog[3]!)).toBe('M');
  });

  it('renders mana symbols in WUBRG order', () => {
    expect(manaSymbols(catalog[1]!)).toBe('UU');
    expect(manaSymbols(catalog[3]!)).toBe('WU');
    expect(manaSymbols(catalog[2]!)).toBe('');
  });
});

describe('pickLabel', () => {
  it('maps global picks to pack/card coordinates', () => {
    expect(pickLabel(1)).toBe('pick 1 / 45 (pack 1, card 1)');
    expect(pickLabel(15)).toBe('pick 15 / 45 (pack 1, card 15)');
    expect(pickLabel(16)).toBe('pick 16 / 45 (pack 2, card 1)');
    expect(pickLabel(45)).toBe('pick 45 / 45 (pack 3, card 15)');
    expect(pickLabel(null)).toBe('draft complete');
  });
});

describe('groupCollection', () => {
  it('groups copies by color class in card order', () => {
    const groups = groupCollection([1, 0, 1, 3, 2], catalog);
    expect([...groups.keys()]).toEqual(['W', 'U', 'M', 'C']);
    expect(groups.get('U')).toEqual([{ card: catalog[1], copies: 2 }]);
    expect(groups.get('W')![0]!.copies).toBe(1);
  });

  it('drops empty groups and unknown indices', () => {
    const groups = groupCollection([4, 99], catalog);
    expect([...groups.keys()]).toEqual(['R']);
  });
});

describe('sortPack', () => {
  it('orders by strength, ties by index, without mutating input', () => {
    const pack = [0, 4, 1, 2];
    expect(sortPack(pack, catalog)).toEqual([1, 4, 2, 0]);
    expect(pack).toEqual([0, 4, 1, 2]);
  });
});
