// Keyboard contract: the only way to label is through these keys, so a
// submission outside the closed three-class set cannot be produced.

import type { LabelName } from "./api.js";

export type ConsoleAction =
  | { kind: "label"; label: LabelName }
  | { kind: "skip" };

const KEYMAP: Record<string, ConsoleAction> = {
  "1": { kind: "label", label: "non-toxic" },
  "2": { kind: "label", label: "mild" },
  "3": { kind: "label", label: "toxic" },
  s: { kind: "skip" },
};

const TYPING_TAGS = new Set(["INPUT", "TEXTAREA", "SELECT"]);

export function actionForKey(key: string, target?: EventTarget | null): ConsoleAction | null {
  const element = target as HTMLElement | null;
  if (element && (TYPING_TAGS.has(element.tagName) || element.isContentEditable)) {
    return null;
  }
  return KEYMAP[key.toLowerCase()] ?? null;
}
