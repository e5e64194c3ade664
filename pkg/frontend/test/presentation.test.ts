import { describe, expect, it } from 'vitest';

import {
  formatAge,
  formatDelta,
  formatScore,
  RISK_COLORS,
  riskColor,
  TREND_ARROWS,
  trendArrow,
} from '../src/presentation.js';
import type { RiskBucket, TrendBucket } from '../src/types.js';

const RISKS: RiskBucket[] = ['low', 'elevated', 'high'];
const TRENDS: TrendBucket[] = [
  'flat',
  'rising-small',
  'rising-large',
  'falling-small',
  'falling-large',
];

describe('risk colors', () => {
  it('maps each bucket to exactly one color, bijectively', () => {
    const colors = RISKS.map(riskColor);
    expect(new Set(colors).size).toBe(RISKS.length);
    expect(Object.keys(RISK_COLORS).sort()).toEqual([...RISKS].sort());
  });

  it('darkens with risk', () => {
    // quick luminance proxy: sum of RGB channels decreases
    const luminance = (hex: string) =>
      parseInt(hex.slice(1, 3), 16) +
      parseInt(hex.slice(3, 5), 16) +
      parseInt(hex.slice(5, 7), 16);
    expect(luminance(riskColor('low'))).toBeGreaterThan(
      luminance(riskColor('elevated')),
    );
    expect(luminance(riskColor('elevated'))).toBeGreaterThan(
      luminance(riskColor('high')),
    );
  });
});

describe('trend arrows', () => {
  it('covers every bucket with a distinct glyph/scale pair', () => {
    const specs = TRENDS.map(trendArrow);
    const keys = specs.map((s) => `${s.glyph}@${s.scale}`);
    expect(new Set(keys).size).toBe(TRENDS.length);
    expect(Object.keys(TREND_ARROWS).sort()).toEqual([...TRENDS].sort());
  });

  it('rising arrows point up and large changes grow', () => {
    expect(trendArrow('rising-large').glyph).toBe('↑');
    expect(trendArrow('rising-large').scale).toBeGreaterThan(
      trendArrow('rising-small').scale,
    );
    expect(trendArrow('falling-large').glyph).toBe('↓');
    expect(trendArrow('flat').scale).toBe(1);
  });

  it('matches the frozen mapping table', () => {
    expect(TREND_ARROWS).toMatchSnapshot();
    expect(RISK_COLORS).toMatchSnapshot();
  });
});

describe('number rendering', () => {
  it('shows scores exactly as the API sent them', () => {
    expect(formatScore(0.119203)).toBe('0.119203');
    expect(formatScore(0.7)).toBe('0.7');
    expect(formatScore(1)).toBe('1');
  });

  it('adds only a sign to deltas', () => {
    expect(formatDelta(0.45)).toBe('+0.45');
    expect(formatDelta(-0.06)).toBe('-0.06');
    expect(formatDelta(0)).toBe('0');
  });

  it('humanizes ages without losing the order of magnitude', () => {
    expect(formatAge(45)).toBe('45 s');
    expect(formatAge(600)).toBe('10 min');
    expect(formatAge(7200)).toBe('2 h');
    expect(formatAge(259200)).toBe('3 d');
  });
});
