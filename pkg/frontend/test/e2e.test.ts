// @vitest-environment jsdom
//
// End-to-end: spawn the real chat service with the shipped pack, mount the
// UI against it, type the first dialogue question, and check the rendered
// definition bubble plus its transition breadcrumb.
//
// Run with `npm run test:e2e` (the Python package must be installed).

import { spawn, type ChildProcess } from "node:child_process";
import { mkdtempSync } from "node:fs";
import { tmpdir } from "node:os";
import { join } from "node:path";
import { afterAll, beforeAll, describe, expect, it } from "vitest";

import { ChatApi } from "../src/api.js";
import { ChatApp } from "../src/app.js";

const PORT = 8741;
const BASE = `http://127.0.0.1:${PORT}`;

let service: ChildProcess;

async function waitForService(): Promise<void> {
  for (let attempt = 0; attempt < 50; attempt++) {
    try {
      const response = await fetch(`${BASE}/api/packs`);
      if (response.ok) return;
    } catch {
      // not up yet
    }
    await new Promise((resolve) => setTimeout(resolve, 200));
  }
  throw new Error("chat service did not come up");
}

beforeAll(async () => {
  const transcripts = mkdtempSync(join(tmpdir(), "convagent-e2e-"));
  service = spawn(
    "python3",
    ["-m", "convagent.cli", "serve",
     "--listen", `127.0.0.1:${PORT}`,
     "--transcripts", transcripts],
    { stdio: "ignore" },
  );
  await waitForService();
}, 30_000);

afterAll(() => {
  service?.kill();
});

describe("chat UI against the live service", () => {
  it("renders the prerequisite-subject definition with its breadcrumb", async () => {
    const root = document.createElement("main");
    document.body.append(root);
    const app = new ChatApp({
      api: new ChatApi(BASE),
      pack: "academic_regulation",
      root,
    });
    await app.start();
    expect(root.querySelector(".context-badge")?.textContent)
      .toBe("quy_che_dao_tao");

    // type into the composer and submit, like a user would
    const input = root.querySelector<HTMLInputElement>("input.utterance")!;
    input.value = "môn học tiên quyết là gì?";
    input.dispatchEvent(new Event("input"));
    const form = root.querySelector<HTMLFormElement>("form.composer")!;
    form.dispatchEvent(new Event("submit", { cancelable: true }));
    await new Promise<void>((resolve) => {
      const poll = () => (app.state.inFlight ? setTimeout(poll, 25) : resolve());
      poll();
    });

    const agentBubble = [...root.querySelectorAll("li.agent .bubble")].at(-1);
    expect(agentBubble?.textContent).toContain(
      "Môn học tiên quyết của một môn học là môn học bắt buộc");
    const breadcrumb = root.querySelector(".breadcrumb")?.textContent ?? "";
    expect(breadcrumb.endsWith("mon_hoc_tien_quyet")).toBe(true);
    expect(root.querySelector(".context-badge")?.textContent)
      .toBe("mon_hoc_tien_quyet");
  }, 20_000);

  it("keeps two tabs on independent sessions", async () => {
    const api = new ChatApi(BASE);
    const first = await api.createSession("academic_regulation");
    const second = await api.createSession("academic_regulation");
    expect(first.session_id).not.toBe(second.session_id);

    await api.sendMessage(first.session_id, "tín chỉ là gì?");
    const transcriptSecond = await api.fetchTranscript(second.session_id);
    expect(transcriptSecond).toEqual([]);
  });

  it("shows an error banner for an unknown pack", async () => {
    const root = document.createElement("main");
    document.body.append(root);
    const app = new ChatApp({ api: new ChatApi(BASE), pack: "nope", root });
    await app.start();
    expect(root.querySelector(".error-banner")).not.toBeNull();
  });
});
