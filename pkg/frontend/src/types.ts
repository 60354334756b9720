// Payload shapes of the draftbench draft service.

export interface CardInfo {
  index: number;
  name: string;
  rarity: string;
  colors: number[]; // required mana symbols, WUBRG order
  strength: number;
}

export interface SetInfo {
  code: string;
  size: number;
  cards: CardInfo[];
}

export interface DraftView {
  draft_id: string;
  set_code: string;
  status: 'awaiting_human' | 'finished';
  pick: number | null;
  pack_number: number;
  pick_in_pack: number;
  pack: number[];
  collection: number[];
}

export interface Suggestion {
  card: number;
  score: number;
}

export interface SuggestionResponse {
  agent: string;
  pick: number;
  scores: Suggestion[];
}

export interface ApiErrorBody {
  code: string;
  message: string;
}
