// Threshold-alert notifications: polled from the API, shown until the
// moderator dismisses them. Dismissal is client-side state; the cursor
// keeps already-fetched alerts from reappearing.

import { escapeHtml, formatScore } from './presentation.js';
import type { AlertEvent } from './types.js';

export class NotificationCenter {
  private pending = new Map<string, AlertEvent>();
  private dismissed = new Set<string>();
  cursor = 0;

  ingest(alerts: AlertEvent[], cursor: number): void {
    this.cursor = Math.max(this.cursor, cursor);
    for (const alert of alerts) {
      if (!this.dismissed.has(alert.alert_id)) {
        this.pending.set(alert.alert_id, alert);
      }
    }
  }

  dismiss(alertId: string): void {
    this.dismissed.add(alertId);
    this.pending.delete(alertId);
  }

  visible(): AlertEvent[] {
    return [...this.pending.values()];
  }
}

export function renderNotifications(alerts: AlertEvent[]): string {
  if (alerts.length === 0) return '';
  const items = alerts
    .map(
      (alert) =>
        `<li class="notification" data-alert-id="${escapeHtml(alert.alert_id)}">` +
        `<a href="#/conversation/${encodeURIComponent(alert.conversation_id)}">` +
        `Watched conversation crossed ${formatScore(alert.score_at_trigger)} ` +
        `at comment ${alert.triggering_after_ordinal}</a>` +
        `<button class="dismiss" data-alert-id="${escapeHtml(alert.alert_id)}">&times;</button>` +
        `</li>`,
    )
    .join('');
  return `<ul class="notifications">${items}</ul>`;
}
