/**
 * Application wiring: session lifecycle, element palette, suggestions,
 * discretization table, and the sweep panel. State lives server-side;
 * this layer only renders the latest SessionState and forwards actions.
 */

import { ApiClient, ApiError, ElementSpec, MatchSolution, SessionState } from "./api.js";
import { renderChart } from "./chart.js";
import { renderSweep } from "./sweep.js";
import { QuantityError, formatSi, parseQuantity } from "./units.js";

export interface AppOptions {
  animateMs?: number;
}

const FIXTURE_LOAD = {
  type: "resonator",
  r_series_ohms: 15.0,
  l_henries: 18e-9,
  c_farads: 1.2e-12,
} as const;

function el<K extends keyof HTMLElementTagNameMap>(
  doc: Document,
  tag: K,
  attrs: Record<string, string> = {},
  text?: string,
): HTMLElementTagNameMap[K] {
  const node = doc.createElement(tag);
  for (const [key, value] of Object.entries(attrs)) node.setAttribute(key, value);
  if (text !== undefined) node.textContent = text;
  return node;
}

export class App {
  private state: SessionState | null = null;
  private busy = false;
  private doc: Document;
  private redoStack: ElementSpec[] = [];
  private overlayS1p: string | null = null;

  private chartSvg!: SVGSVGElement;
  private sweepSvg!: SVGSVGElement;
  private statusLine!: HTMLElement;
  private stackList!: HTMLElement;
  private suggestionList!: HTMLElement;
  private discretizeTable!: HTMLElement;
  private paletteControls: HTMLButtonElement[] = [];
  private kindSelect!: HTMLSelectElement;
  private placementSelect!: HTMLSelectElement;
  private valueInput!: HTMLInputElement;

  constructor(
    private root: HTMLElement,
    private client: ApiClient,
    private options: AppOptions = {},
  ) {
    this.doc = root.ownerDocument;
    this.buildLayout();
  }

  get sessionState(): SessionState | null {
    return this.state;
  }

  private buildLayout() {
    const doc = this.doc;
    this.root.replaceChildren();

    const left = el(doc, "div", { class: "chart-panel" });
    this.chartSvg = doc.createElementNS("http://www.w3.org/2000/svg", "svg");
    this.chartSvg.setAttribute("id", "smith-chart");
    left.appendChild(this.chartSvg);
    this.statusLine = el(doc, "div", { id: "status-line" }, "no session");
    left.appendChild(this.statusLine);

    const right = el(doc, "div", { class: "control-panel" });

    // session controls
    const sessionBox = el(doc, "fieldset", { id: "session-box" });
    sessionBox.appendChild(el(doc, "legend", {}, "Session"));
    const newFixture = el(doc, "button", { id: "new-fixture-session" }, "New session (resonator fixture)");
    newFixture.addEventListener("click", () => void this.newFixtureSession());
    sessionBox.appendChild(newFixture);
    right.appendChild(sessionBox);

    // element palette
    const palette = el(doc, "fieldset", { id: "palette" });
    palette.appendChild(el(doc, "legend", {}, "Palette"));
    this.kindSelect = el(doc, "select", { id: "palette-kind" });
    for (const [value, label] of [["inductor", "L"], ["capacitor", "C"]] as const) {
      this.kindSelect.appendChild(el(doc, "option", { value }, label));
    }
    this.placementSelect = el(doc, "select", { id: "palette-placement" });
    for (const placement of ["series", "shunt"] as const) {
      this.placementSelect.appendChild(el(doc, "option", { value: placement }, placement));
    }
    this.valueInput = el(doc, "input", { id: "palette-value", placeholder: "6.8nH / 1.2pF" });
    const pushButton = el(doc, "button", { id: "palette-push" }, "Push");
    pushButton.addEventListener("click", () => void this.pushFromPalette());
    const undoButton = el(doc, "button", { id: "palette-undo" }, "Undo");
    undoButton.addEventListener("click", () => void this.undo());
    const redoButton = el(doc, "button", { id: "palette-redo" }, "Redo");
    redoButton.addEventListener("click", () => void this.redo());
    palette.append(
      this.kindSelect, this.placementSelect, this.valueInput, pushButton, undoButton, redoButton,
    );
    this.paletteControls = [pushButton, undoButton, redoButton];
    right.appendChild(palette);

    this.stackList = el(doc, "ol", { id: "element-stack" });
    right.appendChild(this.stackList);

    const suggestBox = el(doc, "fieldset", { id: "suggestions-box" });
    suggestBox.appendChild(el(doc, "legend", {}, "Suggestions"));
    this.suggestionList = el(doc, "ul", { id: "suggestions" });
    suggestBox.appendChild(this.suggestionList);
    right.appendChild(suggestBox);

    const discretizeBox = el(doc, "fieldset", { id: "discretize-box" });
    discretizeBox.appendChild(el(doc, "legend", {}, "Discretize"));
    const runDiscretize = el(doc, "button", { id: "discretize-run" }, "Search E24 (k=2)");
    runDiscretize.addEventListener("click", () => void this.discretize("E24", 2));
    discretizeBox.appendChild(runDiscretize);
    this.discretizeTable = el(doc, "div", { id: "discretize-table" });
    discretizeBox.appendChild(this.discretizeTable);
    right.appendChild(discretizeBox);

    const sweepBox = el(doc, "fieldset", { id: "sweep-box" });
    sweepBox.appendChild(el(doc, "legend", {}, "S11 sweep"));
    const runSweep = el(doc, "button", { id: "sweep-run" }, "Sweep 700-1100 MHz");
    runSweep.addEventListener("click", () => void this.showSweep(this.overlayS1p));
    sweepBox.appendChild(runSweep);
    const overlayInput = el(doc, "input", {
      type: "file",
      id: "overlay-file",
      accept: ".s1p",
      title: "overlay a measured .s1p file",
    });
    overlayInput.addEventListener("change", () => {
      const file = overlayInput.files?.[0];
      if (!file) {
        this.overlayS1p = null;
        return;
      }
      void file.text().then((text) => {
        this.overlayS1p = text;
      });
    });
    sweepBox.appendChild(overlayInput);
    this.sweepSvg = doc.createElementNS("http://www.w3.org/2000/svg", "svg");
    this.sweepSvg.setAttribute("id", "sweep-chart");
    sweepBox.appendChild(this.sweepSvg);
    right.appendChild(sweepBox);

    this.root.append(left, right);
    renderChart(this.chartSvg, null, { animateMs: 0 });
  }

  private setBusy(busy: boolean) {
    this.busy = busy;
    for (const button of this.paletteControls) button.disabled = busy;
  }

  private async mutate<T>(action: () => Promise<T>): Promise<T | null> {
    if (this.busy) return null; // one in-flight mutation at a time
    this.setBusy(true);
    try {
      return await action();
    } catch (error) {
      this.reportError(error);
      return null;
    } finally {
      this.setBusy(false);
    }
  }

  private reportError(error: unknown) {
    const message =
      error instanceof ApiError
        ? `service error ${error.status}: ${error.message}`
        : String(error);
    this.statusLine.textContent = message;
    this.statusLine.setAttribute("class", "error");
  }

  private applyState(state: SessionState) {
    this.state = state;
    renderChart(this.chartSvg, state, { animateMs: this.options.animateMs ?? 300 });
    this.statusLine.setAttribute("class", "");
    this.statusLine.textContent = `S11 ${state.s11_db.toFixed(2)} dB at ${(state.f0_hz / 1e6).toFixed(1)} MHz`;
    this.renderStack(state);
    this.renderSuggestions(state.suggestions);
  }

  private renderStack(state: SessionState) {
    this.stackList.replaceChildren();
    for (const element of state.elements) {
      const unit = element.kind === "inductor" ? "H" : element.kind === "capacitor" ? "F" : "ohm";
      this.stackList.appendChild(
        el(this.doc, "li", {}, `${element.placement} ${element.kind} ${formatSi(element.value, unit)}`),
      );
    }
  }

  private renderSuggestions(suggestions: MatchSolution[]) {
    this.suggestionList.replaceChildren();
    suggestions.forEach((solution, index) => {
      const item = el(this.doc, "li", {});
      const label = `${solution.topology} (S11 ${solution.achieved_s11_db.toFixed(1)} dB)`;
      const apply = el(this.doc, "button", { class: "apply-suggestion", "data-index": String(index) }, `apply: ${label}`);
      apply.addEventListener("click", () => void this.applySuggestion(solution));
      item.appendChild(apply);
      this.suggestionList.appendChild(item);
    });
  }

  async newFixtureSession(): Promise<SessionState | null> {
    const result = await this.mutate(async () => {
      const { state } = await this.client.createSession(915e6, FIXTURE_LOAD);
      return state;
    });
    if (result) {
      this.redoStack = [];
      this.applyState(result);
    }
    return result;
  }

  async pushFromPalette(): Promise<SessionState | null> {
    if (!this.state) return null;
    let value: number;
    try {
      const unit = this.kindSelect.value === "inductor" ? "H" : "F";
      value = parseQuantity(this.valueInput.value, unit);
    } catch (error) {
      if (error instanceof QuantityError) {
        this.reportError(error);
        return null;
      }
      throw error;
    }
    return this.pushElement({
      kind: this.kindSelect.value as ElementSpec["kind"],
      placement: this.placementSelect.value as ElementSpec["placement"],
      value,
    });
  }

  async pushElement(element: ElementSpec, fromRedo = false): Promise<SessionState | null> {
    if (!this.state) return null;
    const id = this.state.id;
    const result = await this.mutate(() => this.client.pushElement(id, element));
    if (result) {
      if (!fromRedo) this.redoStack = [];
      this.applyState(result);
    }
    return result;
  }

  async undo(): Promise<SessionState | null> {
    if (!this.state) return null;
    const id = this.state.id;
    const popped = this.state.elements[this.state.elements.length - 1];
    const result = await this.mutate(() => this.client.popElement(id));
    if (result) {
      if (popped) this.redoStack.push(popped);
      this.applyState(result);
    }
    return result;
  }

  /** Re-push the most recently undone element through the service. */
  async redo(): Promise<SessionState | null> {
    const element = this.redoStack.pop();
    if (!element) return null;
    return this.pushElement(element, true);
  }

  /** Push every element of a suggested solution, load side first. */
  async applySuggestion(solution: MatchSolution): Promise<SessionState | null> {
    let last: SessionState | null = null;
    for (const element of solution.elements) {
      last = await this.pushElement(element);
      if (!last) return null;
    }
    return last ?? this.state;
  }

  /** Replace the stack with a discretization candidate. */
  async applyNetwork(elements: ElementSpec[]): Promise<SessionState | null> {
    if (!this.state) return null;
    while (this.state.elements.length > 0) {
      const popped = await this.undo();
      if (!popped) return null;
    }
    let last: SessionState | null = this.state;
    for (const element of elements) {
      last = await this.pushElement(element);
      if (!last) return null;
    }
    return last;
  }

  async discretize(series: string, k: number) {
    if (!this.state) return null;
    const id = this.state.id;
    const report = await this.mutate(() => this.client.discretize(id, series, k));
    if (!report) return null;
    this.discretizeTable.replaceChildren();
    const table = el(this.doc, "table", { class: "candidates" });
    const rows = [
      { network: report.best_network, s11_db: report.best_s11_db },
      ...report.runner_ups,
    ];
    for (const row of rows) {
      const tr = el(this.doc, "tr", { class: "candidate-row" });
      tr.appendChild(el(this.doc, "td", {}, `${row.s11_db.toFixed(2)} dB`));
      const parts = row.network.elements
        .map(
          (e) =>
            `${e.placement.charAt(0)}-${e.kind.charAt(0).toUpperCase()} ` +
            formatSi(e.value, e.kind === "inductor" ? "H" : "F"),
        )
        .join(", ");
      tr.appendChild(el(this.doc, "td", {}, parts));
      const td = el(this.doc, "td", {});
      const apply = el(this.doc, "button", { class: "apply-candidate" }, "apply");
      apply.addEventListener("click", () => void this.applyNetwork(row.network.elements));
      td.appendChild(apply);
      tr.appendChild(td);
      table.appendChild(tr);
    }
    this.discretizeTable.appendChild(table);
    return report;
  }

  async showSweep(overlayS1p: string | null = null) {
    if (!this.state) return null;
    const id = this.state.id;
    const result = await this.mutate(async () => {
      const sweep = await this.client.sweep(id, 700e6, 1100e6, 201);
      let overlay = null;
      if (overlayS1p) {
        // measured overlay: its own session so the curve comes from the service
        const { id: overlayId } = await this.client.createSession(this.state!.f0_hz, {
          type: "s1p",
          content: overlayS1p,
        });
        overlay = await this.client.sweep(overlayId, 700e6, 1100e6, 201);
      }
      return { sweep, overlay };
    });
    if (!result) return null;
    return renderSweep(this.sweepSvg, result.sweep, result.overlay);
  }
}
