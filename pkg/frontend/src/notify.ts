/* Notification badge and list, fed by polling (no server push). The
 * interval is configurable; the default matches a human checking a tab,
 * not a load test. */

import type { NotificationView } from "./api.js";
import { clear, el } from "./dom.js";
import type { ViewSession } from "./state.js";

export interface NotifyApi {
  notifications(unreadOnly?: boolean): Promise<{ items: NotificationView[]; unread: number }>;
  markRead(notificationId: string): Promise<unknown>;
}

const KIND_LABELS: Record<string, string> = {
  shortlisted: "you were shortlisted",
  contact_requested: "contact requested",
  contact_accepted: "contact accepted",
  video_requested: "video chat requested",
  video_accepted: "video chat accepted",
  message_received: "new message",
};

export class NotificationsPane {
  private items: NotificationView[] = [];
  private timer: ReturnType<typeof setInterval> | null = null;

  constructor(
    private readonly root: HTMLElement,
    private readonly api: NotifyApi,
    private readonly session: ViewSession,
    private readonly pollMs = 5000,
  ) {}

  async refresh(): Promise<void> {
    const response = await this.api.notifications();
    this.items = response.items;
    this.session.unread = response.unread;
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

  private render(): void {
    const doc = this.root.ownerDocument;
    clear(this.root);
    this.root.appendChild(
      el(doc, "div", { class: "notify-badge", "data-unread": String(this.session.unread) }, [
        `${this.session.unread} unread`,
      ]),
    );
    const list = el(doc, "ul", { class: "notify-list" });
    for (const note of this.items) {
      const item = el(doc, "li", { class: note.read ? "note read" : "note unread" }, [
        `${KIND_LABELS[note.kind] ?? note.kind} (${note.job_id} / ${note.candidate_id})`,
      ]);
      if (!note.read) {
        item.appendChild(
          el(doc, "button", {
            type: "button",
            "data-role": "mark-read",
            onclick: () => void this.markRead(note.notification_id),
          }, ["mark read"]),
        );
      }
      list.appendChild(item);
    }
    this.root.appendChild(list);
  }

  private async markRead(notificationId: string): Promise<void> {
    await this.api.markRead(notificationId);
    await this.refresh();
  }
}
