// Wire types mirroring the ranking API contract (docs/formats.md in the
// backend repo). Field names are normative; the client never recomputes
// scores, deltas, or ordering.

export type TrendBucket =
  | 'flat'
  | 'rising-small'
  | 'rising-large'
  | 'falling-small'
  | 'falling-large';

export type RiskBucket = 'low' | 'elevated' | 'high';

export interface RankingEntry {
  conversation_id: string;
  page_title: string;
  heading: string;
  latest_score: number;
  score_delta: number;
  trend_bucket: TrendBucket;
  risk_bucket: RiskBucket;
  comment_count: number;
  age: number; // seconds since last activity
  is_live: boolean;
}

export interface RankingPayload {
  generated_at: string;
  entries: RankingEntry[];
}

export interface ForecastPoint {
  after_ordinal: number;
  score: number;
  scorer_id: string;
  computed_at: string;
}

export interface CommentRow {
  comment_id: string;
  author: string;
  posted_at: string | null;
  text: string;
  indent_depth: number;
  parent_comment_id: string | null;
  ordinal: number;
  forecast: ForecastPoint | null;
}

export interface ConversationPayload {
  conversation_id: string;
  page_title: string;
  heading: string;
  is_live: boolean;
  last_activity: string | null;
  comments: CommentRow[];
}

export interface WatchItem {
  watch_id: string;
  moderator_id: string;
  conversation_id: string;
  alert_threshold: number;
  created_at: string;
}

export interface AlertEvent {
  alert_id: string;
  watch_id: string;
  conversation_id: string;
  triggering_after_ordinal: number;
  score_at_trigger: number;
  emitted_at: string;
}

export interface AlertsPayload {
  alerts: AlertEvent[];
  cursor: number;
}

export interface HealthPayload {
  status: string;
  version: string;
  scorer_id: string;
  pages: string[];
  last_poll: Record<string, string | null>;
}
