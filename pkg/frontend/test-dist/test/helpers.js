import { readFileSync } from "node:fs";
import { dirname, join } from "node:path";
import { fileURLToPath } from "node:url";
import { JSDOM } from "jsdom";
const here = dirname(fileURLToPath(import.meta.url));
export function consoleDom() {
    // compiled location test-dist/test/ -> frontend/public/index.html
    const html = readFileSync(join(here, "..", "..", "public", "index.html"), "utf-8");
    return new JSDOM(html, { url: "http://localhost/" });
}
export function pressKey(dom, key) {
    const event = new dom.window.KeyboardEvent("keydown", { key, bubbles: true, cancelable: true });
    dom.window.document.dispatchEvent(event);
}
export async function until(predicate, timeoutMs = 5000, what = "condition") {
    const started = Date.now();
    while (!predicate()) {
        if (Date.now() - started > timeoutMs) {
            throw new Error(`timed out waiting for ${what}`);
        }
        await new Promise((resolve) => setTimeout(resolve, 10));
    }
}
