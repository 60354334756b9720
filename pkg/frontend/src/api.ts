// Thin typed client over the draft service's JSON endpoints.

import type { DraftView, SetInfo, SuggestionResponse } from './types.js';

export class ApiError extends Error {
  code: string;
  status: number;

  constructor(status: number, code: string, message: string) {
    super(message);
    this.code = code;
    this.status = status;
  }
}

async function parse<T>(response: Response): Promise<T> {
  if (response.ok) {
    return (await response.json()) as T;
  }
  let code = 'http_error';
  let message = `${response.status} ${response.statusText}`;
  try {
    const body = (await response.json()) as { code?: string; message?: string };
    if (body.code) code = body.code;
    if (body.message) message = body.message;
  } catch {
    // non-JSON error body; keep the status line
  }
  throw new ApiError(response.status, code, message);
}

export class DraftApi {
  constructor(
    readonly base: string,
    private readonly fetchFn: typeof fetch = fetch,
  ) {}

  private url(path: string): string {
    return this.base.replace(/\/$/, '') + path;
  }

  async sets(): Promise<SetInfo[]> {
    return parse(await this.fetchFn(this.url('/sets')));
  }

  async createDraft(agents: string[], seed?: number, setCode?: string): Promise<DraftView> {
    const body: Record<string, unknown> = { agents };
    if (seed !== undefined) body.seed = seed;
    if (setCode) body.set_code = setCode;
    return parse(
      await this.fetchFn(this.url('/drafts'), {
        method: 'POST',
        headers: { 'content-type': 'application/json' },
        body: JSON.stringify(body),
      }),
    );
  }

  async state(draftId: string): Promise<DraftView> {
    return parse(await this.fetchFn(this.url(`/drafts/${draftId}/state`)));
  }

  async submitPick(draftId: string, card: number, pick: number): Promise<DraftView> {
    return parse(
      await this.fetchFn(this.url(`/drafts/${draftId}/pick`), {
        method: 'POST',
        headers: { 'content-type': 'application/json' },
        body: JSON.stringify({ card, pick }),
      }),
    );
  }

  async suggestions(draftId: string, agent: string): Promise<SuggestionResponse> {
    const query = new URLSearchParams({ agent });
    return parse(await this.fetchFn(this.url(`/drafts/${draftId}/suggestions?${query}`)));
  }

  async downloadLog(draftId: string): Promise<string> {
    const response = await this.fetchFn(this.url(`/drafts/${draftId}/log`));
    if (!response.ok) {
      return parse<never>(response);
    }
    return response.text();
  }
}

/** Service base URL: ?api=... beats same-origin, which beats the dev default. */
export function resolveApiBase(location: { search: string; origin: string; port: string }): string {
  const param = new URLSearchParams(location.search).get('api');
  if (param) return param;
  // served by a static host during development: talk to the local service
  if (location.port && location.port !== '8100') return 'http://127.0.0.1:8100';
  return location.origin;
}
