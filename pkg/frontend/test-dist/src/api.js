// Typed client for the annotation service JSON API.
export const LABELS = ["non-toxic", "mild", "toxic"];
export class ConflictError extends Error {
    constructor(current) {
        super(`revision conflict: server is at revision ${current.revision}`);
        this.current = current;
    }
}
export class ApiError extends Error {
    constructor(status, detail) {
        super(`service error ${status}: ${detail}`);
        this.status = status;
    }
}
async function errorDetail(response) {
    try {
        const body = (await response.json());
        return body.error ?? response.statusText;
    }
    catch {
        return response.statusText;
    }
}
export class AnnotateApi {
    constructor(baseUrl = "") {
        this.baseUrl = baseUrl;
    }
    url(path) {
        return this.baseUrl + path;
    }
    async health() {
        try {
            const response = await fetch(this.url("/api/health"));
            return response.ok;
        }
        catch {
            return false;
        }
    }
    async nextTasks(n, strategy) {
        const query = strategy ? `?n=${n}&strategy=${encodeURIComponent(strategy)}` : `?n=${n}`;
        const response = await fetch(this.url(`/api/tasks/next${query}`));
        if (!response.ok) {
            throw new ApiError(response.status, await errorDetail(response));
        }
        const body = (await response.json());
        return body.tasks;
    }
    async submitLabel(exampleId, label, annotator, expectedRevision) {
        return this.post("/api/labels", {
            example_id: exampleId,
            label,
            annotator,
            expected_revision: expectedRevision,
        });
    }
    async skip(exampleId, expectedRevision, annotator) {
        return this.post("/api/skips", {
            example_id: exampleId,
            expected_revision: expectedRevision,
            annotator,
        });
    }
    async stats() {
        const response = await fetch(this.url("/api/stats"));
        if (!response.ok) {
            throw new ApiError(response.status, await errorDetail(response));
        }
        return (await response.json());
    }
    async post(path, body) {
        const response = await fetch(this.url(path), {
            method: "POST",
            headers: { "Content-Type": "application/json" },
            body: JSON.stringify(body),
        });
        if (response.status === 409) {
            const conflict = (await response.json());
            throw new ConflictError(conflict.current);
        }
        if (!response.ok) {
            throw new ApiError(response.status, await errorDetail(response));
        }
        return (await response.json());
    }
}
