// Console state machine against a scripted in-process fake of the service.
import assert from "node:assert/strict";
import { test } from "node:test";
import { AnnotateApi } from "../src/api.js";
import { AnnotationConsole } from "../src/app.js";
import { consoleDom, pressKey, until } from "./helpers.js";
function fakeService(tasks) {
    const store = new Map(tasks.map((t) => [t.example_id, { ...t }]));
    const recorded = [];
    const fetchImpl = async (input, init) => {
        const url = new URL(String(input), "http://fake");
        const respond = (status, body) => new Response(JSON.stringify(body), {
            status,
            headers: { "Content-Type": "application/json" },
        });
        if (url.pathname === "/api/tasks/next") {
            const n = Number(url.searchParams.get("n") ?? "1");
            const open = [...store.values()].filter((t) => t.status === "unlabeled").slice(0, n);
            return respond(200, { tasks: open });
        }
        if (url.pathname === "/api/stats") {
            const labeled = [...store.values()].filter((t) => t.status === "labeled");
            const count = (name) => labeled.filter((t) => t.label === name).length;
            const stats = {
                by_status: {
                    unlabeled: [...store.values()].filter((t) => t.status === "unlabeled").length,
                    labeled: labeled.length,
                    skipped: [...store.values()].filter((t) => t.status === "skipped").length,
                },
                distribution: {
                    "non-toxic": count("non-toxic"),
                    mild: count("mild"),
                    toxic: count("toxic"),
                    total: labeled.length,
                },
                by_annotator: {},
                corpus_size: store.size,
            };
            return respond(200, stats);
        }
        if (url.pathname === "/api/labels" || url.pathname === "/api/skips") {
            const body = JSON.parse(String(init?.body));
            recorded.push({ path: url.pathname, body });
            const task = store.get(String(body.example_id));
            if (!task) {
                return respond(404, { error: "unknown id" });
            }
            if (body.expected_revision !== task.revision) {
                return respond(409, { error: "conflict", current: task });
            }
            task.revision += 1;
            if (url.pathname === "/api/labels") {
                task.status = "labeled";
                task.label = body.label;
            }
            else {
                task.status = "skipped";
            }
            return respond(200, task);
        }
        return respond(404, { error: "not found" });
    };
    return { fetchImpl, recorded, store };
}
function task(id, text) {
    return { example_id: id, text, context: [], status: "unlabeled", revision: 0 };
}
async function bootConsole(tasks) {
    const fake = fakeService(tasks);
    const realFetch = globalThis.fetch;
    globalThis.fetch = fake.fetchImpl;
    const dom = consoleDom();
    const app = new AnnotationConsole(new AnnotateApi("http://fake"), dom.window.document, {
        annotator: "tester",
        batchSize: 2,
    });
    await app.start();
    return {
        app,
        dom,
        fake,
        close: () => {
            globalThis.fetch = realFetch;
        },
    };
}
test("keypress 2 submits mild with the displayed revision and advances", async () => {
    const ctx = await bootConsole([task("a", "first line"), task("b", "second line")]);
    try {
        const doc = ctx.dom.window.document;
        await until(() => ctx.app.state === "ready", 2000, "console ready");
        assert.equal(doc.getElementById("chat-text")?.textContent, "first line");
        pressKey(ctx.dom, "2");
        await until(() => doc.getElementById("chat-text")?.textContent === "second line", 2000, "advance");
        assert.equal(ctx.fake.recorded.length, 1);
        assert.deepEqual(ctx.fake.recorded[0].body, {
            example_id: "a",
            label: "mild",
            annotator: "tester",
            expected_revision: 0,
        });
        const mildBar = doc.querySelector(".bar-mild");
        assert.equal(mildBar.dataset.count, "1");
    }
    finally {
        ctx.close();
    }
});
test("skip key marks skipped and advances", async () => {
    const ctx = await bootConsole([task("a", "first"), task("b", "second")]);
    try {
        const doc = ctx.dom.window.document;
        await until(() => ctx.app.state === "ready", 2000, "ready");
        pressKey(ctx.dom, "s");
        await until(() => doc.getElementById("chat-text")?.textContent === "second", 2000, "advance");
        assert.equal(ctx.fake.recorded[0].path, "/api/skips");
        assert.equal(ctx.fake.store.get("a")?.status, "skipped");
    }
    finally {
        ctx.close();
    }
});
test("stale revision shows the conflict view with server state", async () => {
    const ctx = await bootConsole([task("a", "contested"), task("b", "next up")]);
    try {
        const doc = ctx.dom.window.document;
        await until(() => ctx.app.state === "ready", 2000, "ready");
        // another annotator wins the race
        const other = ctx.fake.store.get("a");
        other.revision = 1;
        other.status = "labeled";
        other.label = "toxic";
        pressKey(ctx.dom, "2");
        await until(() => ctx.app.state === "conflict", 2000, "conflict state");
        const banner = doc.getElementById("conflict-banner");
        assert.notEqual(banner.style.display, "none");
        assert.match(doc.getElementById("conflict-detail")?.textContent ?? "", /revision 1/);
        // acknowledging with a key moves on to the next task
        pressKey(ctx.dom, "1");
        await until(() => doc.getElementById("chat-text")?.textContent === "next up", 2000, "advance");
    }
    finally {
        ctx.close();
    }
});
test("completion screen appears when no tasks remain", async () => {
    const ctx = await bootConsole([task("only", "last one")]);
    try {
        const doc = ctx.dom.window.document;
        await until(() => ctx.app.state === "ready", 2000, "ready");
        pressKey(ctx.dom, "3");
        await until(() => ctx.app.state === "done", 2000, "done");
        const completion = doc.getElementById("completion");
        assert.notEqual(completion.style.display, "none");
        const toxicBar = doc.querySelector(".bar-toxic");
        assert.equal(toxicBar.dataset.count, "1");
    }
    finally {
        ctx.close();
    }
});
test("network failure keeps the task and shows the retry banner", async () => {
    const ctx = await bootConsole([task("a", "fragile")]);
    try {
        const doc = ctx.dom.window.document;
        await until(() => ctx.app.state === "ready", 2000, "ready");
        const brokenFetch = async () => {
            throw new TypeError("network down");
        };
        globalThis.fetch = brokenFetch;
        pressKey(ctx.dom, "1");
        await until(() => ctx.app.state === "offline", 2000, "offline state");
        assert.equal(doc.getElementById("chat-text")?.textContent, "fragile");
        const banner = doc.getElementById("retry-banner");
        assert.notEqual(banner.style.display, "none");
    }
    finally {
        ctx.close();
    }
});
test("guidance panel lists the three classes", async () => {
    const ctx = await bootConsole([task("a", "x")]);
    try {
        const text = ctx.dom.window.document.getElementById("guidance")?.textContent ?? "";
        for (const label of ["non-toxic", "mild", "toxic"]) {
            assert.ok(text.includes(label), label);
        }
    }
    finally {
        ctx.close();
    }
});
