// The ranking view: one row per conversation, exactly in the API's
// order, color-coded by risk with a trend arrow for the latest change.

import {
  escapeHtml,
  formatAge,
  formatDelta,
  formatScore,
  riskColor,
  RISK_TEXT_COLORS,
  trendArrow,
} from './presentation.js';
import type { RankingEntry, RankingPayload, WatchItem } from './types.js';

function arrowCell(entry: RankingEntry): string {
  const arrow = trendArrow(entry.trend_bucket);
  return (
    `<span class="arrow" data-trend="${entry.trend_bucket}" ` +
    `style="color:${arrow.color};font-size:${arrow.scale}em" ` +
    `title="change ${formatDelta(entry.score_delta)}">${arrow.glyph}</span>`
  );
}

export function renderRankingRow(
  entry: RankingEntry,
  watch: WatchItem | undefined,
): string {
  const color = riskColor(entry.risk_bucket);
  const text = RISK_TEXT_COLORS[entry.risk_bucket];
  const watchCell = watch
    ? `<button class="unwatch" data-watch-id="${escapeHtml(watch.watch_id)}">` +
      `watching (&ge;${formatScore(watch.alert_threshold)})</button>`
    : `<button class="watch" data-conversation-id="${escapeHtml(entry.conversation_id)}">watch</button>`;
  return (
    `<tr class="ranking-row" data-conversation-id="${escapeHtml(entry.conversation_id)}" ` +
    `data-risk="${entry.risk_bucket}" style="background:${color};color:${text}">` +
    `<td class="page">${escapeHtml(entry.page_title)}</td>` +
    `<td class="heading"><a href="#/conversation/${encodeURIComponent(entry.conversation_id)}" ` +
    `style="color:${text}">${escapeHtml(entry.heading)}</a></td>` +
    `<td class="score">${formatScore(entry.latest_score)}</td>` +
    `<td class="trend">${arrowCell(entry)}</td>` +
    `<td class="comments">${entry.comment_count}</td>` +
    `<td class="age">${formatAge(entry.age)}</td>` +
    `<td class="watch-cell">${watchCell}</td>` +
    `</tr>`
  );
}

export function renderRankingTable(
  payload: RankingPayload,
  watchesByConversation: Map<string, WatchItem> = new Map(),
): string {
  if (payload.entries.length === 0) {
    return (
      `<p class="empty-state">No live conversations right now. ` +
      `Last updated ${escapeHtml(payload.generated_at)}.</p>`
    );
  }
  const rows = payload.entries
    .map((entry) =>
      renderRankingRow(entry, watchesByConversation.get(entry.conversation_id)),
    )
    .join('');
  return (
    `<table class="ranking">` +
    `<thead><tr><th>Page</th><th>Conversation</th><th>Risk</th><th>Trend</th>` +
    `<th>Comments</th><th>Age</th><th></th></tr></thead>` +
    `<tbody>${rows}</tbody></table>` +
    `<p class="generated-at">Generated ${escapeHtml(payload.generated_at)}</p>`
  );
}

export function renderStaleBanner(lastGeneratedAt: string | null): string {
  const suffix = lastGeneratedAt
    ? ` Showing data from ${escapeHtml(lastGeneratedAt)}.`
    : '';
  return `<div class="stale-banner">Connection problem; data may be stale.${suffix}</div>`;
}
