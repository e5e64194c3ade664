// Self-contained stub of the ranking API for client tests: it speaks the
// documented HTTP contract from in-memory data, with zero backend code.

import { createServer, type IncomingMessage, type Server, type ServerResponse } from 'node:http';
import type { AddressInfo } from 'node:net';
import type {
  AlertEvent,
  ConversationPayload,
  RankingEntry,
  WatchItem,
} from '../src/types.js';

export const STUB_TOKEN = 'stub-token';

export interface StubState {
  ranking: RankingEntry[];
  conversations: Map<string, ConversationPayload>;
  watches: Map<string, WatchItem>;
  alerts: Array<{ seq: number; alert: AlertEvent }>;
  nextSeq: number;
}

export function seededState(): StubState {
  const hot: ConversationPayload = {
    conversation_id: 'conv-hot',
    page_title: 'Talk:Example',
    heading: 'Heated thread',
    is_live: true,
    last_activity: '2021-06-05T11:52:00Z',
    comments: [1, 2, 3].map((ordinal) => ({
      comment_id: `hot-c${ordinal}`,
      author: `User${ordinal}`,
      posted_at: `2021-06-05T11:${49 + ordinal}:00Z`,
      text: `comment body ${ordinal}`,
      indent_depth: ordinal - 1,
      parent_comment_id: ordinal > 1 ? `hot-c${ordinal - 1}` : null,
      ordinal,
      forecast: {
        after_ordinal: ordinal,
        score: [0.2, 0.45, 0.81][ordinal - 1],
        scorer_id: 'stub-scorer',
        computed_at: '2021-06-05T11:55:00Z',
      },
    })),
  };
  const calm: ConversationPayload = {
    ...hot,
    conversation_id: 'conv-calm',
    heading: 'Calm thread',
    comments: hot.comments.slice(0, 2).map((row, index) => ({
      ...row,
      comment_id: `calm-c${index + 1}`,
      parent_comment_id: index > 0 ? `calm-c${index}` : null,
      forecast: { ...row.forecast!, score: [0.15, 0.12][index] },
    })),
  };
  return {
    ranking: [
      {
        conversation_id: 'conv-hot',
        page_title: 'Talk:Example',
        heading: 'Heated thread',
        latest_score: 0.81,
        score_delta: 0.36,
        trend_bucket: 'rising-large',
        risk_bucket: 'high',
        comment_count: 3,
        age: 480,
        is_live: true,
      },
      {
        conversation_id: 'conv-calm',
        page_title: 'Talk:Example',
        heading: 'Calm thread',
        latest_score: 0.12,
        score_delta: -0.03,
        trend_bucket: 'flat',
        risk_bucket: 'low',
        comment_count: 2,
        age: 1800,
        is_live: true,
      },
    ],
    conversations: new Map([
      ['conv-hot', hot],
      ['conv-calm', calm],
    ]),
    watches: new Map(),
    alerts: [],
    nextSeq: 1,
  };
}

function readBody(request: IncomingMessage): Promise<string> {
  return new Promise((resolve) => {
    let data = '';
    request.on('data', (chunk) => (data += chunk));
    request.on('end', () => resolve(data));
  });
}

function send(response: ServerResponse, status: number, body?: unknown): void {
  if (body === undefined) {
    response.writeHead(status).end();
    return;
  }
  const blob = JSON.stringify(body);
  response
    .writeHead(status, { 'Content-Type': 'application/json' })
    .end(blob);
}

export class StubApiServer {
  readonly state = seededState();
  private server: Server;

  constructor() {
    this.server = createServer((request, response) =>
      void this.handle(request, response),
    );
  }

  async start(): Promise<string> {
    await new Promise<void>((resolve) =>
      this.server.listen(0, '127.0.0.1', resolve),
    );
    const { address, port } = this.server.address() as AddressInfo;
    return `http://${address}:${port}`;
  }

  async stop(): Promise<void> {
    await new Promise<void>((resolve, reject) =>
      this.server.close((error) => (error ? reject(error) : resolve())),
    );
  }

  private async handle(
    request: IncomingMessage,
    response: ServerResponse,
  ): Promise<void> {
    const url = new URL(request.url ?? '/', 'http://stub');
    if (request.headers.authorization !== `Bearer ${STUB_TOKEN}`) {
      send(response, 401, { detail: 'unauthorized' });
      return;
    }
    const { state } = this;

    if (request.method === 'GET' && url.pathname === '/api/ranking') {
      send(response, 200, {
        generated_at: '2021-06-05T12:00:00Z',
        entries: state.ranking,
      });
    } else if (request.method === 'GET' && url.pathname === '/api/health') {
      send(response, 200, {
        status: 'ok',
        version: 'stub',
        scorer_id: 'stub-scorer',
        pages: ['Talk:Example'],
        last_poll: { 'Talk:Example': '2021-06-05T11:59:00Z' },
      });
    } else if (request.method === 'GET' && url.pathname === '/api/alerts') {
      const since = Number(url.searchParams.get('since') ?? '0');
      let cursor = since;
      const alerts: AlertEvent[] = [];
      for (const { seq, alert } of state.alerts) {
        if (seq <= since) continue;
        cursor = Math.max(cursor, seq);
        if (state.watches.has(alert.watch_id)) alerts.push(alert);
      }
      send(response, 200, { alerts, cursor });
    } else if (request.method === 'GET' && url.pathname.startsWith('/api/conversations/')) {
      const rest = url.pathname.slice('/api/conversations/'.length);
      const [id, tail] = rest.split('/');
      const conversation = state.conversations.get(decodeURIComponent(id));
      if (!conversation) {
        send(response, 404, { detail: 'unknown conversation' });
      } else if (tail === 'history') {
        send(response, 200, {
          conversation_id: conversation.conversation_id,
          points: conversation.comments.map((c) => c.forecast),
        });
      } else {
        send(response, 200, conversation);
      }
    } else if (request.method === 'POST' && url.pathname === '/api/watches') {
      const body = JSON.parse(await readBody(request));
      const conversation = state.conversations.get(body.conversation_id);
      if (!conversation) {
        send(response, 404, { detail: 'unknown conversation' });
        return;
      }
      const watch: WatchItem = {
        watch_id: `watch-${body.conversation_id}`,
        moderator_id: 'stub-mod',
        conversation_id: body.conversation_id,
        alert_threshold: body.alert_threshold,
        created_at: '2021-06-05T12:00:00Z',
      };
      state.watches.set(watch.watch_id, watch);
      // fire an alert when the newest score already crosses the threshold
      const latest = conversation.comments.at(-1)?.forecast;
      if (latest && latest.score >= watch.alert_threshold) {
        state.alerts.push({
          seq: state.nextSeq++,
          alert: {
            alert_id: `alert-${watch.watch_id}-${latest.after_ordinal}`,
            watch_id: watch.watch_id,
            conversation_id: watch.conversation_id,
            triggering_after_ordinal: latest.after_ordinal,
            score_at_trigger: latest.score,
            emitted_at: '2021-06-05T12:00:01Z',
          },
        });
      }
      send(response, 201, watch);
    } else if (request.method === 'DELETE' && url.pathname.startsWith('/api/watches/')) {
      const id = decodeURIComponent(url.pathname.slice('/api/watches/'.length));
      if (state.watches.delete(id)) {
        send(response, 204);
      } else {
        send(response, 404, { detail: 'unknown watch' });
      }
    } else {
      send(response, 404, { detail: 'no such endpoint' });
    }
  }
}
