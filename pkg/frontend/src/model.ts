/** Pure view computations; every number originates in a service response. */

import type { SessionState } from "./api.js";

export interface CandidateInterval {
  low: number;
  high: number;
}

/** Floors still possibly the lowest breaking one: [low, break_floor-1 | floors]. */
export function candidateInterval(state: SessionState): CandidateInterval {
  const high = state.break_floor !== null ? state.break_floor - 1 : state.floors;
  return { low: state.low, high };
}

export function candidateCount(state: SessionState): number {
  const { low, high } = candidateInterval(state);
  return Math.max(0, high - low + 1);
}

/** Probes already spent; equals the initial budget minus attempts_left. */
export function probesConsumed(state: SessionState): number {
  return state.history.length;
}

export interface BarGeometry {
  leftPct: number;
  widthPct: number;
  markerPct: number | null;
}

/** Geometry of the interval bar over a [1, floors] axis, in percent. */
export function barGeometry(state: SessionState, probe: number | null): BarGeometry {
  const floors = Math.max(1, state.floors);
  const { low, high } = candidateInterval(state);
  if (high < low) {
    return { leftPct: 0, widthPct: 0, markerPct: null };
  }
  const leftPct = ((low - 1) / floors) * 100;
  const widthPct = ((high - low + 1) / floors) * 100;
  const markerPct = probe === null ? null : ((probe - 0.5) / floors) * 100;
  return { leftPct, widthPct, markerPct };
}

export function describeResult(result: { floor: number | null } | null): string | null {
  if (result === null) return null;
  return result.floor === null
    ? "no floor breaks"
    : `lowest breaking floor: ${result.floor}`;
}

export function statusLine(state: SessionState): string {
  const attempts = `${state.attempts_left} attempt${state.attempts_left === 1 ? "" : "s"}`;
  const balls = `${state.balls_left} ball${state.balls_left === 1 ? "" : "s"}`;
  return `${attempts}, ${balls} left`;
}

export interface ParsedForm {
  floors: number;
  balls: number;
}

/** Client-side validation of the create form; returns an error string or the values. */
export function parseForm(floorsText: string, ballsText: string): ParsedForm | string {
  const floors = parseCount(floorsText);
  if (floors === null) return "floors must be a non-negative integer";
  const balls = parseCount(ballsText);
  if (balls === null) return "balls must be a non-negative integer";
  return { floors, balls };
}

function parseCount(text: string): number | null {
  const trimmed = text.trim();
  if (!/^\d+$/.test(trimmed)) return null;
  const value = Number(trimmed);
  return Number.isSafeInteger(value) ? value : null;
}
