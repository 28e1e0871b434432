/* One pair's handshake: stage indicator, the action buttons this side is
 * allowed to press, the chat pane and the video buttons.
 *
 * Button enablement is a pure projection of the status payload; the pane
 * never predicts what the engine will allow. Messages are appended only
 * after the API confirms them (no optimistic echo), and the chat input
 * unlocks exactly when the status endpoint says messaging_enabled.
 */

import type { ApiError, MessageView, StatusView } from "./api.js";
import { clear, el, toast } from "./dom.js";
import type { PairRef, ViewSession } from "./state.js";

export interface HandshakeApi {
  pairStatus(jobId: string, candidateId: string): Promise<{ status: StatusView }>;
  postEvent(jobId: string, candidateId: string, kind: string): Promise<{ status: StatusView }>;
  listMessages(jobId: string, candidateId: string): Promise<{ items: MessageView[] }>;
  sendMessage(jobId: string, candidateId: string, body: string): Promise<unknown>;
}

const STAGES: [keyof StatusView, string][] = [
  ["employer_shortlisted", "employer shortlisted"],
  ["candidate_shortlisted", "candidate shortlisted"],
  ["contact_initiated", "contact requested"],
  ["contact_accepted", "contact accepted"],
];

export class HandshakePane {
  private pair: PairRef | null = null;
  private status: StatusView | null = null;
  private messages: MessageView[] = [];
  private timer: ReturnType<typeof setInterval> | null = null;

  constructor(
    private readonly root: HTMLElement,
    private readonly api: HandshakeApi,
    private readonly session: ViewSession,
    private readonly pollMs = 5000,
  ) {}

  async open(pair: PairRef): Promise<void> {
    this.pair = pair;
    this.session.activePair = pair;
    await this.refresh();
  }

  async refresh(): Promise<void> {
    if (!this.pair) return;
    const { jobId, candidateId } = this.pair;
    const response = await this.api.pairStatus(jobId, candidateId);
    this.status = response.status;
    if (this.status.messaging_enabled) {
      this.messages = (await this.api.listMessages(jobId, candidateId)).items;
    } else {
      this.messages = [];
    }
    this.render();
  }

  startPolling(): void {
    this.stopPolling();
    this.timer = setInterval(() => void this.refresh().catch(() => undefined), this.pollMs);
  }

  stopPolling(): void {
    if (this.timer !== null) {
      clearInterval(this.timer);
      this.timer = null;
    }
  }

  private async act(kind: string): Promise<void> {
    if (!this.pair) return;
    try {
      const response = await this.api.postEvent(this.pair.jobId, this.pair.candidateId, kind);
      this.status = response.status;
      if (this.status.messaging_enabled) {
        this.messages = (await this.api.listMessages(this.pair.jobId, this.pair.candidateId)).items;
      }
      this.render();
    } catch (err) {
      toast(this.root, (err as ApiError).message ?? "action failed");
    }
  }

  private async send(input: HTMLTextAreaElement): Promise<void> {
    if (!this.pair || !this.status?.messaging_enabled) return;
    const body = input.value;
    if (!body.trim()) return;
    try {
      await this.api.sendMessage(this.pair.jobId, this.pair.candidateId, body);
      input.value = "";
      await this.refresh();
    } catch (err) {
      toast(this.root, (err as ApiError).message ?? "message rejected");
    }
  }

  private render(): void {
    const doc = this.root.ownerDocument;
    clear(this.root);
    const status = this.status;
    if (!status) {
      this.root.appendChild(el(doc, "p", {}, ["loading..."]));
      return;
    }

    const pane = el(doc, "div", { class: "handshake" });
    pane.appendChild(
      el(doc, "div", { class: "stage-indicator" }, [`stage ${status.stages_complete} of 4`]),
    );

    const stages = el(doc, "ol", { class: "stage-list" });
    for (const [flag, label] of STAGES) {
      const done = Boolean(status[flag]);
      stages.appendChild(el(doc, "li", { class: done ? "stage done" : "stage pending" }, [label]));
    }
    pane.appendChild(stages);

    if (status.awaiting) {
      pane.appendChild(el(doc, "div", { class: "awaiting" }, [`awaiting ${status.awaiting}`]));
    }

    pane.appendChild(this.renderActions(doc, status));
    if (status.contact) {
      pane.appendChild(this.renderContact(doc, status));
    }
    if (status.stages_complete === 4) {
      pane.appendChild(this.renderVideo(doc, status));
    }
    pane.appendChild(this.renderChat(doc, status));
    this.root.appendChild(pane);
  }

  private renderActions(doc: Document, status: StatusView): HTMLElement {
    const actions = el(doc, "div", { class: "pair-actions" });
    if (this.session.actor === "employer") {
      actions.appendChild(
        el(doc, "button", {
          type: "button",
          "data-role": "shortlist",
          disabled: status.employer_shortlisted,
          onclick: () => void this.act("employer_shortlists"),
        }, ["shortlist candidate"]),
      );
      actions.appendChild(
        el(doc, "button", {
          type: "button",
          "data-role": "request-contact",
          disabled: !(
            status.employer_shortlisted &&
            status.candidate_shortlisted &&
            !status.contact_initiated
          ),
          onclick: () => void this.act("employer_initiates_contact"),
        }, ["request contact"]),
      );
    } else {
      actions.appendChild(
        el(doc, "button", {
          type: "button",
          "data-role": "shortlist",
          disabled: status.candidate_shortlisted,
          onclick: () => void this.act("candidate_shortlists"),
        }, ["shortlist job"]),
      );
      actions.appendChild(
        el(doc, "button", {
          type: "button",
          "data-role": "accept-contact",
          disabled: !(status.contact_initiated && !status.contact_accepted),
          onclick: () => void this.act("candidate_accepts_contact"),
        }, ["accept contact"]),
      );
    }
    return actions;
  }

  private renderContact(doc: Document, status: StatusView): HTMLElement {
    const contact = status.contact!;
    const block = el(doc, "div", { class: "contact-block" });
    block.appendChild(el(doc, "h4", {}, ["contact details"]));
    block.appendChild(
      el(doc, "p", {}, [`${contact.candidate.name} <${contact.candidate.email}>`]),
    );
    for (const hr of contact.employer.hr_contacts) {
      block.appendChild(
        el(doc, "p", {}, [`${contact.employer.business_name}: ${hr.name}, ${hr.phone}, ${hr.email}`]),
      );
    }
    return block;
  }

  private renderVideo(doc: Document, status: StatusView): HTMLElement {
    const video = el(doc, "div", { class: "video-actions" });
    video.appendChild(el(doc, "span", { class: "video-state" }, [`video: ${status.video_state}`]));
    video.appendChild(
      el(doc, "button", {
        type: "button",
        "data-role": "video-request",
        disabled: status.video_state !== "none",
        onclick: () => void this.act("video_requested"),
      }, ["request video chat"]),
    );
    video.appendChild(
      el(doc, "button", {
        type: "button",
        "data-role": "video-accept",
        disabled: !(
          status.video_state === "requested" && status.video_requested_by !== this.session.actor
        ),
        onclick: () => void this.act("video_accepted"),
      }, ["accept video chat"]),
    );
    return video;
  }

  private renderChat(doc: Document, status: StatusView): HTMLElement {
    const chat = el(doc, "div", { class: "chat" });
    const thread = el(doc, "ul", { class: "chat-thread" });
    for (const message of this.messages) {
      thread.appendChild(
        el(doc, "li", { class: `chat-message from-${message.sender}` }, [
          `${message.sender}: ${message.body}`,
        ]),
      );
    }
    chat.appendChild(thread);

    const enabled = status.messaging_enabled;
    const input = el(doc, "textarea", {
      "data-role": "chat-input",
      disabled: !enabled,
      placeholder: enabled ? "write a message" : "chat locked",
    }) as HTMLTextAreaElement;
    const send = el(doc, "button", {
      type: "button",
      "data-role": "chat-send",
      disabled: !enabled,
      onclick: () => void this.send(input),
    }, ["send"]);
    chat.appendChild(input);
    chat.appendChild(send);
    if (!enabled) {
      chat.appendChild(
        el(doc, "div", { class: "chat-gate-note" }, [
          status.awaiting ? `chat unlocks after the full handshake, awaiting ${status.awaiting}` : "chat locked",
        ]),
      );
    }
    return chat;
  }
}
