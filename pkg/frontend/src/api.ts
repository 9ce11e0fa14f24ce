// Typed client for the annotation service JSON API.

export type LabelName = "non-toxic" | "mild" | "toxic";

export const LABELS: readonly LabelName[] = ["non-toxic", "mild", "toxic"];

export interface Task {
  example_id: string;
  text: string;
  context: string[];
  status: "unlabeled" | "labeled" | "skipped";
  revision: number;
  label?: LabelName;
}

export interface Distribution {
  "non-toxic": number;
  mild: number;
  toxic: number;
  total: number;
}

export interface Stats {
  by_status: { unlabeled: number; labeled: number; skipped: number };
  distribution: Distribution;
  by_annotator: Record<string, number>;
  corpus_size: number;
}

export class ConflictError extends Error {
  constructor(public readonly current: Task) {
    super(`revision conflict: server is at revision ${current.revision}`);
  }
}

export class ApiError extends Error {
  constructor(public readonly status: number, detail: string) {
    super(`service error ${status}: ${detail}`);
  }
}

async function errorDetail(response: Response): Promise<string> {
  try {
    const body = (await response.json()) as { error?: string };
    return body.error ?? response.statusText;
  } catch {
    return response.statusText;
  }
}

export class AnnotateApi {
  constructor(private readonly baseUrl: string = "") {}

  private url(path: string): string {
    return this.baseUrl + path;
  }

  async health(): Promise<boolean> {
    try {
      const response = await fetch(this.url("/api/health"));
      return response.ok;
    } catch {
      return false;
    }
  }

  async nextTasks(n: number, strategy?: string): Promise<Task[]> {
    const query = strategy ? `?n=${n}&strategy=${encodeURIComponent(strategy)}` : `?n=${n}`;
    const response = await fetch(this.url(`/api/tasks/next${query}`));
    if (!response.ok) {
      throw new ApiError(response.status, await errorDetail(response));
    }
    const body = (await response.json()) as { tasks: Task[] };
    return body.tasks;
  }

  async submitLabel(
    exampleId: string,
    label: LabelName,
    annotator: string,
    expectedRevision: number,
  ): Promise<Task> {
    return this.post("/api/labels", {
      example_id: exampleId,
      label,
      annotator,
      expected_revision: expectedRevision,
    });
  }

  async skip(exampleId: string, expectedRevision: number, annotator: string): Promise<Task> {
    return this.post("/api/skips", {
      example_id: exampleId,
      expected_revision: expectedRevision,
      annotator,
    });
  }

  async stats(): Promise<Stats> {
    const response = await fetch(this.url("/api/stats"));
    if (!response.ok) {
      throw new ApiError(response.status, await errorDetail(response));
    }
    return (await response.json()) as Stats;
  }

  private async post(path: string, body: unknown): Promise<Task> {
    const response = await fetch(this.url(path), {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify(body),
    });
    if (response.status === 409) {
      const conflict = (await response.json()) as { current: Task };
      throw new ConflictError(conflict.current);
    }
    if (!response.ok) {
      throw new ApiError(response.status, await errorDetail(response));
    }
    return (await response.json()) as Task;
  }
}
