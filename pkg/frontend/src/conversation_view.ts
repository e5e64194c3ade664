// The conversation view: every comment with author, time, body, and the
// risk score computed when that comment was posted, so the reader can
// watch the forecast evolve through the thread.

import {
  escapeHtml,
  formatScore,
  riskColor,
  RISK_TEXT_COLORS,
} from './presentation.js';
import type { CommentRow, ConversationPayload, RiskBucket } from './types.js';

// same bucket rule the API applies to the ranking colors
export function bucketForScore(
  score: number,
  thresholds: { elevated: number; high: number } = { elevated: 0.4, high: 0.65 },
): RiskBucket {
  if (score < thresholds.elevated) return 'low';
  if (score < thresholds.high) return 'elevated';
  return 'high';
}

export function renderScoreBadge(row: CommentRow): string {
  if (!row.forecast) {
    return `<span class="score-badge pending">–</span>`;
  }
  const bucket = bucketForScore(row.forecast.score);
  return (
    `<span class="score-badge" data-risk="${bucket}" ` +
    `style="background:${riskColor(bucket)};color:${RISK_TEXT_COLORS[bucket]}">` +
    `${formatScore(row.forecast.score)}</span>`
  );
}

export function renderCommentRow(row: CommentRow): string {
  const when = row.posted_at ? escapeHtml(row.posted_at) : 'undated';
  return (
    `<li class="comment" data-ordinal="${row.ordinal}" ` +
    `style="margin-left:${row.indent_depth * 1.5}em">` +
    `<div class="comment-meta"><span class="author">${escapeHtml(row.author)}</span>` +
    `<span class="posted-at">${when}</span>${renderScoreBadge(row)}</div>` +
    `<div class="comment-text">${escapeHtml(row.text)}</div>` +
    `</li>`
  );
}

export function renderConversation(payload: ConversationPayload): string {
  const rows = payload.comments.map(renderCommentRow).join('');
  const liveness = payload.is_live
    ? ''
    : `<p class="archived-note">This conversation is no longer on the page.</p>`;
  return (
    `<article class="conversation">` +
    `<header><a href="#/" class="back-link">&larr; back to ranking</a>` +
    `<h2>${escapeHtml(payload.heading)}</h2>` +
    `<p class="page-title">${escapeHtml(payload.page_title)}</p>${liveness}</header>` +
    `<ol class="comments">${rows}</ol>` +
    `</article>`
  );
}

export function renderNotFound(conversationId: string): string {
  return (
    `<div class="not-found"><p>No conversation ${escapeHtml(conversationId)}.</p>` +
    `<a href="#/" class="back-link">&larr; back to ranking</a></div>`
  );
}
