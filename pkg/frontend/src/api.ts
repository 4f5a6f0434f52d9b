/** Typed client for the probe-budget session service (/api/session). */

export type Outcome = "broke" | "survived";

export interface HistoryEntry {
  floor: number;
  outcome: Outcome;
}

export interface SessionState {
  floors: number;
  balls: number;
  low: number;
  break_floor: number | null;
  balls_left: number;
  attempts_left: number;
  history: HistoryEntry[];
  status: "active" | "resolved" | "invalid";
  result: { floor: number | null } | null;
}

export interface SessionEnvelope {
  id: string;
  state: SessionState;
  next_probe: number | null;
  result: { floor: number | null } | null;
}

export class ApiError extends Error {
  constructor(public status: number, message: string) {
    super(message);
    this.name = "ApiError";
  }
}

type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

async function parseOrThrow(response: Response): Promise<SessionEnvelope> {
  if (!response.ok) {
    let message = `request failed (${response.status})`;
    try {
      const body = await response.json();
      if (body && typeof body.error === "string") message = body.error;
    } catch {
      // keep the generic message
    }
    throw new ApiError(response.status, message);
  }
  return (await response.json()) as SessionEnvelope;
}

export class SessionApi {
  constructor(
    private readonly base: string = "",
    private readonly fetchImpl: FetchLike = (input, init) => fetch(input, init),
  ) {}

  async create(floors: number, balls: number): Promise<SessionEnvelope> {
    const response = await this.fetchImpl(`${this.base}/api/session`, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify({ floors, balls }),
    });
    return parseOrThrow(response);
  }

  async get(id: string): Promise<SessionEnvelope> {
    const response = await this.fetchImpl(`${this.base}/api/session/${id}`);
    return parseOrThrow(response);
  }

  async report(id: string, floor: number, outcome: Outcome): Promise<SessionEnvelope> {
    const response = await this.fetchImpl(`${this.base}/api/session/${id}/report`, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify({ floor, outcome }),
    });
    return parseOrThrow(response);
  }

  async remove(id: string): Promise<void> {
    await this.fetchImpl(`${this.base}/api/session/${id}`, { method: "DELETE" });
  }
}
