// Keyboard contract: the only way to label is through these keys, so a
// submission outside the closed three-class set cannot be produced.
const KEYMAP = {
    "1": { kind: "label", label: "non-toxic" },
    "2": { kind: "label", label: "mild" },
    "3": { kind: "label", label: "toxic" },
    s: { kind: "skip" },
};
const TYPING_TAGS = new Set(["INPUT", "TEXTAREA", "SELECT"]);
export function actionForKey(key, target) {
    const element = target;
    if (element && (TYPING_TAGS.has(element.tagName) || element.isContentEditable)) {
        return null;
    }
    return KEYMAP[key.toLowerCase()] ?? null;
}
