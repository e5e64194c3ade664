// Typed client for the ranking API. The bearer token lives in memory
// only; a 401 anywhere surfaces as UnauthorizedError so the shell can
// drop back to the login prompt.

import type {
  AlertsPayload,
  ConversationPayload,
  ForecastPoint,
  HealthPayload,
  RankingPayload,
  WatchItem,
} from './types.js';

export class UnauthorizedError extends Error {
  constructor() {
    super('unauthorized');
  }
}

export class ApiError extends Error {
  constructor(public status: number, message: string) {
    super(message);
  }
}

export class ApiClient {
  constructor(
    private baseUrl: string,
    private token: string,
    private fetchImpl: typeof fetch = fetch,
  ) {}

  private async request<T>(
    method: string,
    path: string,
    body?: unknown,
  ): Promise<T> {
    const response = await this.fetchImpl(`${this.baseUrl}${path}`, {
      method,
      headers: {
        Authorization: `Bearer ${this.token}`,
        ...(body !== undefined ? { 'Content-Type': 'application/json' } : {}),
      },
      body: body !== undefined ? JSON.stringify(body) : undefined,
    });
    if (response.status === 401) throw new UnauthorizedError();
    if (!response.ok) {
      throw new ApiError(response.status, await response.text());
    }
    if (response.status === 204) return undefined as T;
    return (await response.json()) as T;
  }

  ranking(limit = 100, offset = 0): Promise<RankingPayload> {
    return this.request('GET', `/api/ranking?limit=${limit}&offset=${offset}`);
  }

  conversation(id: string): Promise<ConversationPayload> {
    return this.request('GET', `/api/conversations/${encodeURIComponent(id)}`);
  }

  history(id: string): Promise<{ conversation_id: string; points: ForecastPoint[] }> {
    return this.request(
      'GET',
      `/api/conversations/${encodeURIComponent(id)}/history`,
    );
  }

  createWatch(conversationId: string, threshold: number): Promise<WatchItem> {
    return this.request('POST', '/api/watches', {
      conversation_id: conversationId,
      alert_threshold: threshold,
    });
  }

  deleteWatch(watchId: string): Promise<void> {
    return this.request('DELETE', `/api/watches/${encodeURIComponent(watchId)}`);
  }

  alerts(since: number): Promise<AlertsPayload> {
    return this.request('GET', `/api/alerts?since=${since}`);
  }

  health(): Promise<HealthPayload> {
    return this.request('GET', '/api/health');
  }
}
