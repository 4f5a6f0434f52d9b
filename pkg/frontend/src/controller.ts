/** Session flow logic, kept framework-free so it can be tested headless.
 *
 * The controller never computes a probe itself: the floor it reports is
 * always the one the service last told it to display, and every rendered
 * value comes straight from the latest envelope.
 */

import { ApiError, SessionApi } from "./api.js";
import type { Outcome, SessionEnvelope } from "./api.js";
import { describeResult, parseForm } from "./model.js";

export type Phase = "setup" | "active" | "done" | "invalid";

export interface ViewState {
  phase: Phase;
  formError: string | null;
  banner: string | null;
  envelope: SessionEnvelope | null;
  /** Probe floor currently shown to the human; sent verbatim with reports. */
  displayedProbe: number | null;
  resultText: string | null;
  busy: boolean;
}

const INITIAL: ViewState = {
  phase: "setup",
  formError: null,
  banner: null,
  envelope: null,
  displayedProbe: null,
  resultText: null,
  busy: false,
};

export class AdvisorController {
  private view: ViewState = { ...INITIAL };

  constructor(
    private readonly api: SessionApi,
    private readonly onChange: (view: ViewState) => void = () => {},
  ) {}

  get state(): ViewState {
    return this.view;
  }

  private push(patch: Partial<ViewState>): void {
    this.view = { ...this.view, ...patch };
    this.onChange(this.view);
  }

  private absorb(envelope: SessionEnvelope): void {
    const status = envelope.state.status;
    this.push({
      envelope,
      displayedProbe: envelope.next_probe,
      resultText: describeResult(envelope.result),
      phase: status === "active" ? "active" : status === "resolved" ? "done" : "invalid",
      banner: null,
      busy: false,
    });
  }

  async createSession(floorsText: string, ballsText: string): Promise<void> {
    const parsed = parseForm(floorsText, ballsText);
    if (typeof parsed === "string") {
      this.push({ formError: parsed });
      return;
    }
    this.push({ formError: null, busy: true });
    try {
      this.absorb(await this.api.create(parsed.floors, parsed.balls));
    } catch (error) {
      // infeasible and malformed inputs come back as 400 -> inline form error
      const message = error instanceof ApiError ? error.message : String(error);
      this.push({ formError: message, busy: false });
    }
  }

  async reportOutcome(outcome: Outcome): Promise<void> {
    const { envelope, displayedProbe } = this.view;
    if (this.view.phase !== "active" || envelope === null || displayedProbe === null) {
      return;
    }
    this.push({ busy: true });
    try {
      this.absorb(await this.api.report(envelope.id, displayedProbe, outcome));
    } catch (error) {
      if (error instanceof ApiError) {
        // recoverable: keep the current view, surface a banner only
        const hint =
          error.status === 404
            ? "session expired or unknown; start a new one"
            : error.message;
        this.push({ banner: hint, busy: false });
      } else {
        this.push({ banner: String(error), busy: false });
      }
    }
  }

  async reset(): Promise<void> {
    const envelope = this.view.envelope;
    if (envelope !== null) {
      try {
        await this.api.remove(envelope.id);
      } catch {
        // best effort; the service expires idle sessions anyway
      }
    }
    this.view = { ...INITIAL };
    this.onChange(this.view);
  }
}
