// Annotation console: one chat at a time, keyboard-driven, server as the
// source of truth. Every submission carries the revision it displayed; a 409
// never overwrites silently and a network failure never drops a decision.

import { AnnotateApi, ConflictError, LABELS, type LabelName, type Stats, type Task } from "./api.js";
import { actionForKey } from "./keymap.js";

export type ConsoleState =
  | "loading"
  | "ready"
  | "submitting"
  | "conflict"
  | "offline"
  | "done";

export interface ConsoleOptions {
  annotator: string;
  strategy?: string;
  batchSize?: number;
}

const LABEL_TITLES: Record<LabelName, string> = {
  "non-toxic": "1 · non-toxic",
  mild: "2 · mild",
  toxic: "3 · toxic",
};

export const GUIDANCE: Record<LabelName, string> = {
  "non-toxic": "Ordinary conversational chat: no profanity, no insults, nothing degrading.",
  mild: "Profanity or inappropriate language that is not aimed at another person.",
  toxic: "Offensive or insulting language directed at a person: derogatory trash talk.",
};

export class AnnotationConsole {
  state: ConsoleState = "loading";
  current: Task | null = null;
  private queue: Task[] = [];
  private readonly annotator: string;
  private readonly strategy?: string;
  private readonly batchSize: number;

  constructor(
    private readonly api: AnnotateApi,
    private readonly doc: Document,
    options: ConsoleOptions,
  ) {
    this.annotator = options.annotator;
    this.strategy = options.strategy;
    this.batchSize = options.batchSize ?? 5;
  }

  async start(): Promise<void> {
    this.doc.addEventListener("keydown", (event) => {
      void this.handleKey(event as KeyboardEvent);
    });
    this.renderGuidance();
    await this.advance();
    await this.refreshStats();
  }

  async handleKey(event: KeyboardEvent): Promise<void> {
    const action = actionForKey(event.key, event.target);
    if (!action) {
      return;
    }
    event.preventDefault();
    if (this.state === "conflict") {
      // any labeling key acknowledges the conflict and moves on
      await this.advance();
      return;
    }
    if (this.state !== "ready" || !this.current) {
      return;
    }
    if (action.kind === "label") {
      await this.submit(action.label);
    } else {
      await this.skip();
    }
  }

  async submit(label: LabelName): Promise<void> {
    if (!this.current) {
      return;
    }
    const task = this.current;
    this.setState("submitting");
    try {
      await this.api.submitLabel(task.example_id, label, this.annotator, task.revision);
    } catch (error) {
      this.handleSubmitError(error, task);
      return;
    }
    this.hideBanners();
    await this.advance();
    await this.refreshStats();
  }

  async skip(): Promise<void> {
    if (!this.current) {
      return;
    }
    const task = this.current;
    this.setState("submitting");
    try {
      await this.api.skip(task.example_id, task.revision, this.annotator);
    } catch (error) {
      this.handleSubmitError(error, task);
      return;
    }
    this.hideBanners();
    await this.advance();
    await this.refreshStats();
  }

  private handleSubmitError(error: unknown, task: Task): void {
    if (error instanceof ConflictError) {
      this.showConflict(error.current);
      return;
    }
    // transient failure: keep the task on screen so nothing is lost
    this.current = task;
    this.setState("offline");
    this.renderTask();
    this.show("retry-banner");
  }

  async advance(): Promise<void> {
    this.hideBanners();
    this.setState("loading");
    if (this.queue.length === 0) {
      try {
        this.queue = await this.api.nextTasks(this.batchSize, this.strategy);
      } catch {
        this.setState("offline");
        this.show("retry-banner");
        return;
      }
    }
    const next = this.queue.shift();
    if (!next) {
      this.current = null;
      this.setState("done");
      await this.renderCompletion();
      return;
    }
    this.current = next;
    this.setState("ready");
    this.renderTask();
  }

  async refreshStats(): Promise<void> {
    let stats: Stats;
    try {
      stats = await this.api.stats();
    } catch {
      this.show("stale-stats");
      return;
    }
    this.hide("stale-stats");
    this.renderStats(stats);
  }

  // -- rendering -------------------------------------------------------------

  private setState(state: ConsoleState): void {
    this.state = state;
    const root = this.doc.getElementById("console");
    if (root) {
      root.dataset.state = state;
    }
    const status = this.doc.getElementById("status-line");
    if (status) {
      status.textContent = state;
    }
  }

  private renderGuidance(): void {
    const panel = this.doc.getElementById("guidance");
    if (!panel) {
      return;
    }
    panel.innerHTML = "";
    for (const label of LABELS) {
      const item = this.doc.createElement("div");
      item.className = "guidance-item";
      const title = this.doc.createElement("strong");
      title.textContent = LABEL_TITLES[label];
      const body = this.doc.createElement("span");
      body.textContent = " " + GUIDANCE[label];
      item.append(title, body);
      panel.appendChild(item);
    }
  }

  private renderTask(): void {
    const task = this.current;
    const text = this.doc.getElementById("chat-text");
    const meta = this.doc.getElementById("task-meta");
    const context = this.doc.getElementById("context");
    if (!task || !text) {
      return;
    }
    text.textContent = task.text;
    if (meta) {
      meta.textContent = `${task.example_id} · revision ${task.revision}`;
      meta.dataset.exampleId = task.example_id;
      meta.dataset.revision = String(task.revision);
    }
    if (context) {
      context.innerHTML = "";
      for (const line of task.context) {
        const item = this.doc.createElement("div");
        item.className = "context-line";
        item.textContent = line;
        context.appendChild(item);
      }
    }
  }

  private showConflict(current: Task): void {
    this.setState("conflict");
    this.show("conflict-banner");
    const detail = this.doc.getElementById("conflict-detail");
    if (detail) {
      const label = current.label ? ` as "${current.label}"` : "";
      detail.textContent =
        `someone else labeled ${current.example_id}${label} (revision ${current.revision}); ` +
        "press any label key to continue";
    }
  }

  private async renderCompletion(): Promise<void> {
    this.show("completion");
    await this.refreshStats();
  }

  private renderStats(stats: Stats): void {
    const chart = this.doc.getElementById("chart");
    if (chart) {
      chart.innerHTML = "";
      const peak = Math.max(1, ...LABELS.map((label) => stats.distribution[label]));
      for (const label of LABELS) {
        const count = stats.distribution[label];
        const row = this.doc.createElement("div");
        row.className = "bar-row";
        const name = this.doc.createElement("span");
        name.className = "bar-label";
        name.textContent = label;
        const bar = this.doc.createElement("div");
        bar.className = `bar bar-${label}`;
        bar.style.width = `${Math.round((count / peak) * 100)}%`;
        bar.dataset.count = String(count);
        const value = this.doc.createElement("span");
        value.className = "bar-count";
        value.textContent = String(count);
        row.append(name, bar, value);
        chart.appendChild(row);
      }
      chart.dataset.total = String(stats.distribution.total);
    }
    const progress = this.doc.getElementById("progress");
    if (progress) {
      const doneCount = stats.by_status.labeled + stats.by_status.skipped;
      progress.textContent = `${doneCount} / ${stats.corpus_size} reviewed (${stats.by_status.labeled} labeled, ${stats.by_status.skipped} skipped)`;
      progress.dataset.labeled = String(stats.by_status.labeled);
    }
    const empty = this.doc.getElementById("chart-empty");
    if (empty) {
      empty.style.display = stats.distribution.total === 0 ? "" : "none";
    }
  }

  private show(id: string): void {
    const element = this.doc.getElementById(id);
    if (element) {
      element.style.display = "";
    }
  }

  private hide(id: string): void {
    const element = this.doc.getElementById(id);
    if (element) {
      element.style.display = "none";
    }
  }

  private hideBanners(): void {
    this.hide("conflict-banner");
    this.hide("retry-banner");
  }
}
