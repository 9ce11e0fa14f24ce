// Browser bootstrap: same-origin service, annotator name from a prompt-free
// default (editable in the header input).

import { AnnotateApi } from "./api.js";
import { AnnotationConsole } from "./app.js";

function annotatorName(doc: Document): string {
  const input = doc.getElementById("annotator") as HTMLInputElement | null;
  const value = input?.value.trim();
  return value || "anonymous";
}

export function boot(doc: Document, baseUrl = ""): AnnotationConsole {
  const api = new AnnotateApi(baseUrl);
  const params = new URLSearchParams(doc.location?.search ?? "");
  const consoleApp = new AnnotationConsole(api, doc, {
    annotator: annotatorName(doc),
    strategy: params.get("strategy") ?? undefined,
  });
  void consoleApp.start();
  return consoleApp;
}

if (typeof window !== "undefined" && typeof document !== "undefined") {
  window.addEventListener("DOMContentLoaded", () => {
    boot(document);
  });
}
