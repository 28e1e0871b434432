import { describe, expect, it, vi } from "vitest";

import type { MessageView, StatusView } from "../src/api";
import { HandshakePane, type HandshakeApi } from "../src/handshake";
import { NotificationsPane, type NotifyApi } from "../src/notify";
import { ViewSession } from "../src/state";
import { click, dom, textOf, until } from "./helpers";

function statusAt(stages: number, extra: Partial<StatusView> = {}): StatusView {
  const awaitingByStage = [
    "employer shortlist",
    "candidate shortlist",
    "employer contact",
    "candidate response",
  ];
  return {
    job_id: "job-000001",
    candidate_id: "cand-000001",
    employer_shortlisted: stages >= 1,
    candidate_shortlisted: stages >= 2,
    contact_initiated: stages >= 3,
    contact_accepted: stages >= 4,
    timestamps: {},
    stages_complete: stages,
    stage: `${stages}/4`,
    awaiting: stages < 4 ? awaitingByStage[stages]! : null,
    messaging_enabled: stages === 4,
    video_state: "none",
    video_requested_by: null,
    ...extra,
  };
}

class FakeHandshakeApi implements HandshakeApi {
  status: StatusView;
  messages: MessageView[] = [];
  events: string[] = [];

  constructor(status: StatusView) {
    this.status = status;
  }

  async pairStatus() {
    return { status: this.status };
  }

  async postEvent(_j: string, _c: string, kind: string) {
    this.events.push(kind);
    if (kind === "candidate_accepts_contact") this.status = statusAt(4);
    return { status: this.status };
  }

  async listMessages() {
    return { items: this.messages };
  }

  async sendMessage(_j: string, _c: string, body: string) {
    this.messages.push({
      message_id: `msg-${this.messages.length + 1}`,
      job_id: "job-000001",
      candidate_id: "cand-000001",
      sender: "candidate",
      body,
      sent_at: "2026-01-01T00:00:00+00:00",
    });
    return {};
  }
}

const PAIR = { jobId: "job-000001", candidateId: "cand-000001" };
const candidateSession = () => new ViewSession("candidate", "cand-000001", "tok");

describe("handshake pane", () => {
  it("locks the chat below 4 of 4 and explains what is missing", async () => {
    for (const stages of [0, 1, 2, 3]) {
      const { root } = dom();
      const api = new FakeHandshakeApi(statusAt(stages));
      const pane = new HandshakePane(root, api, candidateSession());
      await pane.open(PAIR);

      expect(textOf(root.querySelector(".stage-indicator"))).toBe(`stage ${stages} of 4`);
      const input = root.querySelector('[data-role="chat-input"]') as HTMLTextAreaElement;
      const send = root.querySelector('[data-role="chat-send"]') as HTMLButtonElement;
      expect(input.disabled).toBe(true);
      expect(send.disabled).toBe(true);
      expect(textOf(root.querySelector(".chat-gate-note"))).toContain("awaiting");
    }
  });

  it("unlocks the chat at 4 of 4 and appends messages only after confirmation", async () => {
    const { root } = dom();
    const api = new FakeHandshakeApi(statusAt(4));
    const pane = new HandshakePane(root, api, candidateSession());
    await pane.open(PAIR);

    const input = root.querySelector('[data-role="chat-input"]') as HTMLTextAreaElement;
    expect(input.disabled).toBe(false);
    expect(root.querySelector(".chat-gate-note")).toBeNull();

    input.value = "hello there";
    click(root.querySelector('[data-role="chat-send"]'));
    await until(() => root.querySelectorAll(".chat-message").length === 1);
    expect(textOf(root.querySelector(".chat-message"))).toBe("candidate: hello there");
    expect(api.messages).toHaveLength(1);
  });

  it("enables the accept button exactly when the engine would allow it", async () => {
    const { root } = dom();
    const api = new FakeHandshakeApi(statusAt(3));
    const pane = new HandshakePane(root, api, candidateSession());
    await pane.open(PAIR);

    const accept = root.querySelector('[data-role="accept-contact"]') as HTMLButtonElement;
    expect(accept.disabled).toBe(false);
    click(accept);
    await until(() => api.events.includes("candidate_accepts_contact"));
    await until(() => {
      const input = root.querySelector('[data-role="chat-input"]') as HTMLTextAreaElement | null;
      return input !== null && !input.disabled;
    });

    // once accepted, the button is gone from the allowed set
    const after = root.querySelector('[data-role="accept-contact"]') as HTMLButtonElement;
    expect(after.disabled).toBe(true);
  });

  it("shows video controls only after the full handshake, gated by requester", async () => {
    const { root } = dom();
    const api = new FakeHandshakeApi(statusAt(3));
    const pane = new HandshakePane(root, api, candidateSession());
    await pane.open(PAIR);
    expect(root.querySelector('[data-role="video-request"]')).toBeNull();

    api.status = statusAt(4);
    await pane.refresh();
    const request = root.querySelector('[data-role="video-request"]') as HTMLButtonElement;
    const accept = root.querySelector('[data-role="video-accept"]') as HTMLButtonElement;
    expect(request.disabled).toBe(false);
    expect(accept.disabled).toBe(true);

    // the counterpart requested: we may accept, not re-request
    api.status = statusAt(4, { video_state: "requested", video_requested_by: "employer" });
    await pane.refresh();
    expect((root.querySelector('[data-role="video-request"]') as HTMLButtonElement).disabled).toBe(true);
    expect((root.querySelector('[data-role="video-accept"]') as HTMLButtonElement).disabled).toBe(false);

    // we requested: we must not accept our own request
    api.status = statusAt(4, { video_state: "requested", video_requested_by: "candidate" });
    await pane.refresh();
    expect((root.querySelector('[data-role="video-accept"]') as HTMLButtonElement).disabled).toBe(true);
  });
});

describe("notifications pane", () => {
  it("renders the unread count and polls on the configured interval", async () => {
    vi.useFakeTimers();
    try {
      const { root } = dom();
      let fetches = 0;
      const api: NotifyApi = {
        async notifications() {
          fetches += 1;
          return {
            items: [
              {
                notification_id: "ntf-000001",
                kind: "shortlisted",
                job_id: "job-000001",
                candidate_id: "cand-000001",
                created_at: "2026-01-01T00:00:00+00:00",
                read: false,
              },
            ],
            unread: 1,
          };
        },
        async markRead() {
          return {};
        },
      };
      const session = candidateSession();
      const pane = new NotificationsPane(root, api, session, 5000);
      await pane.refresh();
      expect(session.unread).toBe(1);
      expect(textOf(root.querySelector(".notify-badge"))).toBe("1 unread");
      expect(root.querySelectorAll(".note.unread")).toHaveLength(1);

      pane.startPolling();
      await vi.advanceTimersByTimeAsync(10_000);
      pane.stopPolling();
      expect(fetches).toBeGreaterThanOrEqual(3);
    } finally {
      vi.useRealTimers();
    }
  });
});
