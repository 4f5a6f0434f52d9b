/** DOM layer: renders ViewState and forwards clicks to the controller. */

import { SessionApi } from "./api.js";
import { AdvisorController, ViewState } from "./controller.js";
import { barGeometry, candidateInterval, statusLine } from "./model.js";

function el<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (node === null) throw new Error(`missing element #${id}`);
  return node as T;
}

export class AdvisorApp {
  private controller: AdvisorController;

  private form = el<HTMLFormElement>("create-form");
  private floorsInput = el<HTMLInputElement>("floors");
  private ballsInput = el<HTMLInputElement>("balls");
  private formError = el<HTMLElement>("form-error");
  private setupPanel = el<HTMLElement>("setup-panel");
  private sessionPanel = el<HTMLElement>("session-panel");
  private banner = el<HTMLElement>("banner");
  private probeLabel = el<HTMLElement>("probe-label");
  private statsLabel = el<HTMLElement>("stats-label");
  private intervalLabel = el<HTMLElement>("interval-label");
  private barWindow = el<HTMLElement>("bar-window");
  private barMarker = el<HTMLElement>("bar-marker");
  private brokeButton = el<HTMLButtonElement>("report-broke");
  private survivedButton = el<HTMLButtonElement>("report-survived");
  private resultBox = el<HTMLElement>("result");
  private historyList = el<HTMLElement>("history");
  private resetButton = el<HTMLButtonElement>("reset");

  constructor(api: SessionApi = new SessionApi()) {
    this.controller = new AdvisorController(api, (view) => this.render(view));
    this.form.addEventListener("submit", (event) => {
      event.preventDefault();
      void this.controller.createSession(this.floorsInput.value, this.ballsInput.value);
    });
    this.brokeButton.addEventListener("click", () => {
      void this.controller.reportOutcome("broke");
    });
    this.survivedButton.addEventListener("click", () => {
      void this.controller.reportOutcome("survived");
    });
    this.resetButton.addEventListener("click", () => {
      void this.controller.reset();
    });
    this.render(this.controller.state);
  }

  private render(view: ViewState): void {
    this.formError.textContent = view.formError ?? "";
    this.banner.textContent = view.banner ?? "";
    this.banner.hidden = view.banner === null;

    const inSession = view.envelope !== null;
    this.setupPanel.hidden = inSession;
    this.sessionPanel.hidden = !inSession;
    if (!inSession) return;

    const state = view.envelope!.state;
    const probing = view.phase === "active" && view.displayedProbe !== null;

    this.probeLabel.textContent = probing
      ? `drop from floor ${view.displayedProbe}`
      : "";
    this.statsLabel.textContent = statusLine(state);

    const interval = candidateInterval(state);
    this.intervalLabel.textContent =
      interval.high >= interval.low
        ? `candidates: floors ${interval.low}–${interval.high} of ${state.floors}`
        : "no candidates left";

    const bar = barGeometry(state, probing ? view.displayedProbe : null);
    this.barWindow.style.left = `${bar.leftPct}%`;
    this.barWindow.style.width = `${bar.widthPct}%`;
    if (bar.markerPct === null) {
      this.barMarker.hidden = true;
    } else {
      this.barMarker.hidden = false;
      this.barMarker.style.left = `${bar.markerPct}%`;
    }

    this.brokeButton.disabled = !probing || view.busy;
    this.survivedButton.disabled = !probing || view.busy;

    this.resultBox.textContent = view.resultText ?? "";
    this.resultBox.hidden = view.resultText === null;

    this.historyList.replaceChildren(
      ...state.history.map((entry, index) => {
        const item = document.createElement("li");
        item.textContent = `#${index + 1} floor ${entry.floor}: ${entry.outcome}`;
        return item;
      }),
    );
  }
}
