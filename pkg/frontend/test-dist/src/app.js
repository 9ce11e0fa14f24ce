// Annotation console: one chat at a time, keyboard-driven, server as the
// source of truth. Every submission carries the revision it displayed; a 409
// never overwrites silently and a network failure never drops a decision.
import { ConflictError, LABELS } from "./api.js";
import { actionForKey } from "./keymap.js";
const LABEL_TITLES = {
    "non-toxic": "1 · non-toxic",
    mild: "2 · mild",
    toxic: "3 · toxic",
};
export const GUIDANCE = {
    "non-toxic": "Ordinary conversational chat: no profanity, no insults, nothing degrading.",
    mild: "Profanity or inappropriate language that is not aimed at another person.",
    toxic: "Offensive or insulting language directed at a person: derogatory trash talk.",
};
export class AnnotationConsole {
    constructor(api, doc, options) {
        this.api = api;
        this.doc = doc;
        this.state = "loading";
        this.current = null;
        this.queue = [];
        this.annotator = options.annotator;
        this.strategy = options.strategy;
        this.batchSize = options.batchSize ?? 5;
    }
    async start() {
        this.doc.addEventListener("keydown", (event) => {
            void this.handleKey(event);
        });
        this.renderGuidance();
        await this.advance();
        await this.refreshStats();
    }
    async handleKey(event) {
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
        }
        else {
            await this.skip();
        }
    }
    async submit(label) {
        if (!this.current) {
            return;
        }
        const task = this.current;
        this.setState("submitting");
        try {
            await this.api.submitLabel(task.example_id, label, this.annotator, task.revision);
        }
        catch (error) {
            this.handleSubmitError(error, task);
            return;
        }
        this.hideBanners();
        await this.advance();
        await this.refreshStats();
    }
    async skip() {
        if (!this.current) {
            return;
        }
        const task = this.current;
        this.setState("submitting");
        try {
            await this.api.skip(task.example_id, task.revision, this.annotator);
        }
        catch (error) {
            this.handleSubmitError(error, task);
            return;
        }
        this.hideBanners();
        await this.advance();
        await this.refreshStats();
    }
    handleSubmitError(error, task) {
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
    async advance() {
        this.hideBanners();
        this.setState("loading");
        if (this.queue.length === 0) {
            try {
                this.queue = await this.api.nextTasks(this.batchSize, this.strategy);
            }
            catch {
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
    async refreshStats() {
        let stats;
        try {
            stats = await this.api.stats();
        }
        catch {
            this.show("stale-stats");
            return;
        }
        this.hide("stale-stats");
        this.renderStats(stats);
    }
    // -- rendering -------------------------------------------------------------
    setState(state) {
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
    renderGuidance() {
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
    renderTask() {
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
    showConflict(current) {
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
    async renderCompletion() {
        this.show("completion");
        await this.refreshStats();
    }
    renderStats(stats) {
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
    show(id) {
        const element = this.doc.getElementById(id);
        if (element) {
            element.style.display = "";
        }
    }
    hide(id) {
        const element = this.doc.getElementById(id);
        if (element) {
            element.style.display = "none";
        }
    }
    hideBanners() {
        this.hide("conflict-banner");
        this.hide("retry-banner");
    }
}
