// Browser shell: login, hash routing between the two views, periodic
// refresh, watch buttons, and alert notifications. All rendering goes
// through the pure view functions; responses are applied in issue order
// per view and stale ones are discarded via a generation counter.

import { ApiClient, ApiError, UnauthorizedError } from './api.js';
import { renderConversation, renderNotFound } from './conversation_view.js';
import { NotificationCenter, renderNotifications } from './notifications.js';
import { renderRankingTable, renderStaleBanner } from './ranking_view.js';
import type { RankingPayload, WatchItem } from './types.js';

const REFRESH_MS = 30_000; // ranking auto-refresh; manual refresh always available
const ALERT_POLL_MS = 15_000;
const DEFAULT_WATCH_THRESHOLD = 0.6;

class App {
  private client: ApiClient | null = null;
  private generation = 0;
  private lastRanking: RankingPayload | null = null;
  private watches = new Map<string, WatchItem>(); // by conversation_id
  private notifications = new NotificationCenter();
  private timers: ReturnType<typeof setInterval>[] = [];

  constructor(private root: HTMLElement) {
    root.addEventListener('click', (event) => this.onClick(event));
    window.addEventListener('hashchange', () => void this.route());
  }

  start(): void {
    this.renderLogin();
  }

  private renderLogin(message = ''): void {
    for (const timer of this.timers) clearInterval(timer);
    this.timers = [];
    this.client = null;
    this.root.innerHTML =
      `<form id="login" class="login">` +
      `<h1>Conversation monitor</h1>` +
      (message ? `<p class="login-error">${message}</p>` : '') +
      `<label>Access token <input type="password" id="token" autocomplete="off"></label>` +
      `<button type="submit">Sign in</button>` +
      `</form>`;
    const form = this.root.querySelector('#login') as HTMLFormElement;
    form.addEventListener('submit', (event) => {
      event.preventDefault();
      const token = (this.root.querySelector('#token') as HTMLInputElement).value;
      this.client = new ApiClient('', token); // same-origin deployment
      void this.afterLogin();
    });
  }

  private async afterLogin(): Promise<void> {
    try {
      await this.client!.health();
    } catch (error) {
      if (error instanceof UnauthorizedError) {
        this.renderLogin('That token was not accepted.');
        return;
      }
      this.renderLogin('Could not reach the service.');
      return;
    }
    this.timers.push(setInterval(() => void this.refreshRanking(), REFRESH_MS));
    this.timers.push(setInterval(() => void this.pollAlerts(), ALERT_POLL_MS));
    await this.route();
  }

  private chrome(content: string): string {
    return (
      `<div class="chrome">` +
      `<div id="notification-area">${renderNotifications(this.notifications.visible())}</div>` +
      `<main id="view">${content}</main>` +
      `<footer class="limitations">` +
      `Scores are statistical forecasts by an imperfect model; they can be ` +
      `wrong and can reflect biases in training data. They rank conversations, ` +
      `never contributors. <a href="limitations.html">Abilities and limitations</a>` +
      `</footer></div>`
    );
  }

  private async route(): Promise<void> {
    if (!this.client) return;
    const hash = window.location.hash;
    const match = hash.match(/^#\/conversation\/(.+)$/);
    if (match) {
      await this.showConversation(decodeURIComponent(match[1]));
    } else {
      await this.refreshRanking();
    }
  }

  private async refreshRanking(): Promise<void> {
    if (!this.client || window.location.hash.startsWith('#/conversation/')) return;
    const generation = ++this.generation;
    try {
      const payload = await this.client.ranking();
      if (generation !== this.generation) return; // a newer request resolved
      this.lastRanking = payload;
      this.root.innerHTML = this.chrome(
        `<div class="toolbar"><button id="refresh">Refresh now</button></div>` +
        renderRankingTable(payload, this.watches),
      );
    } catch (error) {
      if (error instanceof UnauthorizedError) {
        this.renderLogin('Session rejected; sign in again.');
        return;
      }
      if (generation !== this.generation) return;
      this.root.innerHTML = this.chrome(
        renderStaleBanner(this.lastRanking?.generated_at ?? null) +
        (this.lastRanking ? renderRankingTable(this.lastRanking, this.watches) : ''),
      );
    }
  }

  private async showConversation(conversationId: string): Promise<void> {
    if (!this.client) return;
    this.generation++; // invalidate in-flight ranking refreshes
    try {
      const payload = await this.client.conversation(conversationId);
      this.root.innerHTML = this.chrome(renderConversation(payload));
    } catch (error) {
      if (error instanceof UnauthorizedError) {
        this.renderLogin('Session rejected; sign in again.');
        return;
      }
      if (error instanceof ApiError && error.status === 404) {
        this.root.innerHTML = this.chrome(renderNotFound(conversationId));
        return;
      }
      this.root.innerHTML = this.chrome(renderStaleBanner(null));
    }
  }

  private async pollAlerts(): Promise<void> {
    if (!this.client) return;
    try {
      const payload = await this.client.alerts(this.notifications.cursor);
      this.notifications.ingest(payload.alerts, payload.cursor);
      const area = this.root.querySelector('#notification-area');
      if (area) {
        area.innerHTML = renderNotifications(this.notifications.visible());
      }
    } catch {
      // alert polling is best-effort; the next cycle retries
    }
  }

  private onClick(event: Event): void {
    const target = event.target as HTMLElement;
    if (target.id === 'refresh') {
      void this.refreshRanking();
    } else if (target.classList.contains('watch')) {
      const conversationId = target.dataset.conversationId!;
      void this.createWatch(conversationId);
    } else if (target.classList.contains('unwatch')) {
      void this.deleteWatch(target.dataset.watchId!);
    } else if (target.classList.contains('dismiss')) {
      this.notifications.dismiss(target.dataset.alertId!);
      const area = this.root.querySelector('#notification-area');
      if (area) area.innerHTML = renderNotifications(this.notifications.visible());
    }
  }

  private async createWatch(conversationId: string): Promise<void> {
    if (!this.client) return;
    try {
      const watch = await this.client.createWatch(
        conversationId,
        DEFAULT_WATCH_THRESHOLD,
      );
      this.watches.set(conversationId, watch);
      await this.refreshRanking();
    } catch (error) {
      if (error instanceof ApiError) {
        alert(`Could not create watch: ${error.message}`);
      }
    }
  }

  private async deleteWatch(watchId: string): Promise<void> {
    if (!this.client) return;
    try {
      await this.client.deleteWatch(watchId);
    } catch {
      // already gone is fine
    }
    for (const [conversationId, watch] of this.watches) {
      if (watch.watch_id === watchId) this.watches.delete(conversationId);
    }
    await this.refreshRanking();
  }
}

if (typeof document !== 'undefined') {
  const root = document.getElementById('app');
  if (root) new App(root).start();
}
