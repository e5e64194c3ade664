// Pure presentation mappings. Colors and arrows are functions of the
// API's buckets and nothing else; numbers are rendered exactly as the
// API sent them.

import type { RiskBucket, TrendBucket } from './types.js';

// three shades of red, darker = higher risk; bijective with the buckets
export const RISK_COLORS: Record<RiskBucket, string> = {
  low: '#fdecea',
  elevated: '#f1998e',
  high: '#c62828',
};

// readable text color per shade
export const RISK_TEXT_COLORS: Record<RiskBucket, string> = {
  low: '#5f2120',
  elevated: '#3b0908',
  high: '#ffffff',
};

export interface ArrowSpec {
  glyph: string;
  scale: number; // css em multiplier: larger arrow = larger recent change
  color: string;
}

export const TREND_ARROWS: Record<TrendBucket, ArrowSpec> = {
  flat: { glyph: '→', scale: 1.0, color: '#9e9e9e' },
  'rising-small': { glyph: '↗', scale: 1.0, color: '#c62828' },
  'rising-large': { glyph: '↑', scale: 1.5, color: '#c62828' },
  'falling-small': { glyph: '↘', scale: 1.0, color: '#2e7d32' },
  'falling-large': { glyph: '↓', scale: 1.5, color: '#2e7d32' },
};

export function riskColor(bucket: RiskBucket): string {
  return RISK_COLORS[bucket];
}

export function trendArrow(bucket: TrendBucket): ArrowSpec {
  return TREND_ARROWS[bucket];
}

// the API value verbatim; presentation adds only an explicit sign
export function formatScore(score: number): string {
  return String(score);
}

export function formatDelta(delta: number): string {
  return delta > 0 ? `+${delta}` : String(delta);
}

export function formatAge(seconds: number): string {
  if (seconds < 90) return `${Math.round(seconds)} s`;
  const minutes = seconds / 60;
  if (minutes < 90) return `${Math.round(minutes)} min`;
  const hours = minutes / 60;
  if (hours < 36) return `${Math.round(hours)} h`;
  return `${Math.round(hours / 24)} d`;
}

export function escapeHtml(raw: string): string {
  return raw
    .replace(/&/g, '&amp;')
    .replace(/</g, '&lt;')
    .replace(/>/g, '&gt;')
    .replace(/"/g, '&quot;')
    .replace(/'/g, '&#39;');
}
