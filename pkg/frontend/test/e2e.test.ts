/* End-to-end checks against a real service instance: the suite spawns
 * the Python API on a scratch port with a scratch storage directory and
 * drives the panes through a synthetic DOM while a second, independent
 * client reads the same endpoints for comparison. */

import { type ChildProcess, spawn } from "node:child_process";
import { mkdtempSync } from "node:fs";
import { tmpdir } from "node:os";
import { join } from "node:path";
import { fileURLToPath } from "node:url";
import { afterAll, beforeAll, describe, expect, it } from "vitest";

import { ApiClient, type FetchLike } from "../src/api";
import { FeedPane } from "../src/feed";
import { HandshakePane } from "../src/handshake";
import { QuizWizard } from "../src/quiz";
import { ViewSession } from "../src/state";
import { click, dom, sleep, textOf, until } from "./helpers";

const PORT = 8700 + (process.pid % 500);
const BASE = `http://127.0.0.1:${PORT}`;
const REPO_ROOT = fileURLToPath(new URL("../..", import.meta.url));

let service: ChildProcess;

function counting(): { calls: { method: string; url: string }[]; fetchImpl: FetchLike } {
  const calls: { method: string; url: string }[] = [];
  const fetchImpl: FetchLike = (input, init) => {
    calls.push({ method: init?.method ?? "GET", url: String(input) });
    return fetch(input, init);
  };
  return { calls, fetchImpl };
}

async function waitForHealth(): Promise<void> {
  for (let attempt = 0; attempt < 100; attempt++) {
    try {
      const response = await fetch(`${BASE}/health`);
      if (response.ok) return;
    } catch {
      // not up yet
    }
    await sleep(150);
  }
  throw new Error(`service did not come up on ${BASE}`);
}

interface Account {
  api: ApiClient;
  calls: { method: string; url: string }[];
  id: string;
  token: string;
}

async function registerCandidate(
  name: string,
  email: string,
  skills: string[],
): Promise<Account> {
  const { calls, fetchImpl } = counting();
  const api = new ApiClient(BASE, fetchImpl);
  const response = await api.registerCandidate({
    first_name: name,
    last_name: "park",
    email,
    date_of_birth: "1986-01-01",
    location: { country: "australia", region: "nsw", city: "sydney" },
    salary_min: 80000,
    salary_max: 90000,
    employment_type: "full_time",
    gender: "female",
    skills,
  });
  api.setToken(response.token);
  return { api, calls, id: response.candidate.candidate_id, token: response.token };
}

describe("against a live service", () => {
  let employer: Account;
  let rae: Account;
  let skillIds: string[] = [];
  let jobId = "";

  beforeAll(async () => {
    const storage = mkdtempSync(join(tmpdir(), "talentmatch-e2e-"));
    service = spawn(
      "python3",
      ["-m", "talentmatch", "serve", "--port", String(PORT), "--storage-dir", storage],
      { cwd: REPO_ROOT, stdio: "ignore" },
    );
    await waitForHealth();

    const { calls, fetchImpl } = counting();
    const api = new ApiClient(BASE, fetchImpl);
    const registered = await api.registerEmployer({
      business_name: "nimbus analytics",
      hr_contacts: [{ name: "sam hill", phone: "0400000001", email: "sam@nimbus.example" }],
    });
    api.setToken(registered.token);
    employer = { api, calls, id: registered.employer.employer_id, token: registered.token };

    skillIds = [];
    for (const name of ["python", "sql", "docker", "spark"]) {
      const created = await api.createSkill(name, "software");
      skillIds.push(created.skill.skill_id);
    }

    rae = await registerCandidate("rae", "rae@example.net", skillIds.slice(0, 3));
    await registerCandidate("blair", "blair@example.net", skillIds.slice(0, 2));
    await registerCandidate("casey", "casey@example.net", skillIds);
    await registerCandidate("drew", "drew@example.net", skillIds.slice(0, 1));

    const posted = await api.postJob({
      title: "data engineer",
      summary: "pipelines and plumbing",
      location: { country: "australia", region: "nsw", city: "sydney" },
      offered_salary: 100000,
      employment_type: "full_time",
      required_skills: skillIds,
    });
    jobId = posted.job.job_id;
  });

  afterAll(async () => {
    service?.kill("SIGTERM");
    await sleep(200);
  });

  it("quiz wizard blocks at 24 of 25 and submits at 25 of 25", async () => {
    const { root } = dom();
    const wizard = new QuizWizard(root, rae.api, rae.id);
    await wizard.start();

    const submitsSoFar = () =>
      rae.calls.filter((c) => c.method === "POST" && c.url.endsWith("/quiz")).length;

    for (let i = 0; i < 24; i++) {
      click(root.querySelector('input[data-choice="a"]'));
      const next = root.querySelector('[data-role="quiz-next"]');
      if (next) click(next);
    }
    const submit = root.querySelector('[data-role="quiz-submit"]') as HTMLButtonElement;
    expect(submit).not.toBeNull();
    expect(submit.disabled).toBe(true);
    click(submit);
    await wizard.submit();
    expect(submitsSoFar()).toBe(0);

    click(root.querySelector('input[data-choice="a"]'));
    const armed = root.querySelector('[data-role="quiz-submit"]') as HTMLButtonElement;
    expect(armed.disabled).toBe(false);
    click(armed);
    await until(() => root.querySelector(".quiz-result-code") !== null);
    expect(submitsSoFar()).toBe(1);

    const shownCode = textOf(root.querySelector(".quiz-result-code"));
    expect(shownCode).toMatch(/^[ORENTLMCDSF]{5}$/);
    const stored = await rae.api.getPersonality(rae.id);
    expect(stored.code).toBe(shownCode);
  });

  it("feed renders the API order and numbers verbatim", async () => {
    const { root } = dom();
    const session = new ViewSession("employer", employer.id, employer.token);
    const pane = new FeedPane(root, employer.api, session);
    await pane.showForJob(jobId);

    const reference = new ApiClient(BASE);
    reference.setToken(employer.token);
    const feed = await reference.jobFeed(jobId);
    expect(feed.items.length).toBeGreaterThanOrEqual(3);

    const cards = Array.from(root.querySelectorAll(".feed-card"));
    expect(cards.map((c) => c.getAttribute("data-counterpart"))).toEqual(
      feed.items.map((item) => item.candidate_id),
    );
    expect(cards.map((c) => c.querySelector(".feed-percentage")?.textContent)).toEqual(
      feed.items.map((item) => `${String(item.percentage)}%`),
    );
  });

  it("each checkbox selection issues exactly one shortlist call", async () => {
    const { root } = dom();
    const session = new ViewSession("employer", employer.id, employer.token);
    const pane = new FeedPane(root, employer.api, session);
    await pane.showForJob(jobId);

    const eventPosts = () =>
      employer.calls.filter((c) => c.method === "POST" && c.url.includes("/events")).length;
    const before = eventPosts();

    const boxes = Array.from(
      root.querySelectorAll('input[data-role="shortlist"]'),
    ) as HTMLInputElement[];
    expect(boxes.length).toBeGreaterThanOrEqual(2);
    // rae's card plus one other; find rae's so the handshake test can continue
    const cards = Array.from(root.querySelectorAll(".feed-card"));
    const raeIndex = cards.findIndex((c) => c.getAttribute("data-counterpart") === rae.id);
    const otherIndex = raeIndex === 0 ? 1 : 0;

    click(boxes[raeIndex]!);
    click(boxes[otherIndex]!);
    await until(() => eventPosts() - before >= 2);
    await sleep(150); // would catch any straggler duplicate fire
    expect(eventPosts() - before).toBe(2);

    await until(() => boxes[raeIndex]!.checked && boxes[otherIndex]!.checked);
    const status = await employer.api.pairStatus(jobId, rae.id);
    expect(status.status.employer_shortlisted).toBe(true);
  });

  it("chat input is enabled exactly when the status endpoint says 4 of 4", async () => {
    // candidate shortlists back and the employer requests contact: 3 of 4
    await rae.api.postEvent(jobId, rae.id, "candidate_shortlists");
    await employer.api.postEvent(jobId, rae.id, "employer_initiates_contact");

    const { root } = dom();
    const session = new ViewSession("candidate", rae.id, rae.token);
    const pane = new HandshakePane(root, rae.api, session);
    await pane.open({ jobId, candidateId: rae.id });

    expect(textOf(root.querySelector(".stage-indicator"))).toBe("stage 3 of 4");
    let input = root.querySelector('[data-role="chat-input"]') as HTMLTextAreaElement;
    expect(input.disabled).toBe(true);
    expect(textOf(root.querySelector(".chat-gate-note"))).toContain("awaiting candidate response");

    // the last stage through the pane itself
    click(root.querySelector('[data-role="accept-contact"]'));
    await until(() => {
      const current = root.querySelector('[data-role="chat-input"]') as HTMLTextAreaElement | null;
      return current !== null && !current.disabled;
    });

    const confirmed = await rae.api.pairStatus(jobId, rae.id);
    expect(confirmed.status.stage).toBe("4/4");
    expect(confirmed.status.messaging_enabled).toBe(true);
    expect(textOf(root.querySelector(".stage-indicator"))).toBe("stage 4 of 4");

    input = root.querySelector('[data-role="chat-input"]') as HTMLTextAreaElement;
    input.value = "thanks, happy to talk";
    click(root.querySelector('[data-role="chat-send"]'));
    await until(() => root.querySelectorAll(".chat-message").length === 1);
    expect(textOf(root.querySelector(".chat-message"))).toBe("candidate: thanks, happy to talk");

    const thread = await employer.api.listMessages(jobId, rae.id);
    expect(thread.items.map((m) => m.body)).toEqual(["thanks, happy to talk"]);
  });
});
