/* Ranked feed cards with checkbox and swipe shortlisting.
 *
 * Cards appear in the exact order of the feed payload and print the
 * exact percentage the API sent; there is no client-side sorting or
 * arithmetic anywhere in this file. Each selection issues exactly one
 * shortlist call: an in-flight guard swallows the double fire that some
 * DOM implementations produce for a single checkbox click (click plus
 * change), and a failed call reverts the card to its previous state.
 */

import type {
  ApiError,
  Breakdown,
  CandidateFeedEntry,
  EmployerFeedEntry,
  FeedResponse,
} from "./api.js";
import { clear, el, toast } from "./dom.js";
import type { ViewSession } from "./state.js";

export interface FeedApi {
  jobFeed(jobId: string): Promise<FeedResponse<EmployerFeedEntry>>;
  candidateFeed(candidateId: string): Promise<FeedResponse<CandidateFeedEntry>>;
  postEvent(jobId: string, candidateId: string, kind: string): Promise<unknown>;
}

const SWIPE_THRESHOLD_PX = 60;

export class FeedPane {
  private readonly shortlisted = new Set<string>();
  private readonly inFlight = new Set<string>();
  private onShortlisted: ((pairKey: string) => void) | null = null;

  constructor(
    private readonly root: HTMLElement,
    private readonly api: FeedApi,
    private readonly session: ViewSession,
  ) {}

  /** Employer view: ranked candidates for one of their open jobs. */
  async showForJob(jobId: string): Promise<void> {
    const feed = await this.api.jobFeed(jobId);
    const doc = this.root.ownerDocument;
    clear(this.root);
    this.root.appendChild(
      el(doc, "div", { class: "feed-meta" }, [
        `${feed.total} match${feed.total === 1 ? "" : "es"}, generated ${feed.generated_at}`,
      ]),
    );
    for (const entry of feed.items) {
      this.root.appendChild(
        this.card(doc, {
          jobId,
          candidateId: entry.candidate_id,
          heading: `${entry.first_name} ${entry.last_name}`,
          sub: `${entry.employment_type}, ${entry.location.city ?? entry.location.country}`,
          percentage: entry.percentage,
          breakdown: entry.breakdown,
        }),
      );
    }
    if (feed.items.length === 0) {
      this.root.appendChild(el(doc, "p", { class: "feed-empty" }, ["no matches yet"]));
    }
  }

  /** Candidate view: open jobs ranked for them. */
  async showForCandidate(candidateId: string): Promise<void> {
    const feed = await this.api.candidateFeed(candidateId);
    const doc = this.root.ownerDocument;
    clear(this.root);
    this.root.appendChild(
      el(doc, "div", { class: "feed-meta" }, [
        `${feed.total} match${feed.total === 1 ? "" : "es"}, generated ${feed.generated_at}`,
      ]),
    );
    for (const entry of feed.items) {
      this.root.appendChild(
        this.card(doc, {
          jobId: entry.job_id,
          candidateId,
          heading: `${entry.title} at ${entry.business_name}`,
          sub: `${entry.employment_type}, offers ${entry.offered_salary}`,
          percentage: entry.percentage,
          breakdown: entry.breakdown,
        }),
      );
    }
    if (feed.items.length === 0) {
      this.root.appendChild(el(doc, "p", { class: "feed-empty" }, ["no matches yet"]));
    }
  }

  /** Test hook: observe completed shortlist calls. */
  notifyShortlisted(handler: (pairKey: string) => void): void {
    this.onShortlisted = handler;
  }

  private card(
    doc: Document,
    entry: {
      jobId: string;
      candidateId: string;
      heading: string;
      sub: string;
      percentage: number;
      breakdown: Breakdown;
    },
  ): HTMLElement {
    const key = `${entry.jobId}:${entry.candidateId}`;
    const counterpartId = this.session.actor === "employer" ? entry.candidateId : entry.jobId;

    const card = el(doc, "article", {
      class: "feed-card",
      "data-counterpart": counterpartId,
      "data-percentage": String(entry.percentage),
    });
    card.appendChild(el(doc, "h3", {}, [entry.heading]));
    card.appendChild(el(doc, "div", { class: "feed-sub" }, [entry.sub]));
    card.appendChild(
      el(doc, "div", { class: "feed-percentage" }, [`${String(entry.percentage)}%`]),
    );

    const breakdown = el(doc, "ul", { class: "feed-breakdown" });
    for (const [criterion, value] of Object.entries(entry.breakdown)) {
      breakdown.appendChild(
        el(doc, "li", {}, [`${criterion} ${value === null ? "-" : String(value)}`]),
      );
    }
    card.appendChild(breakdown);

    const checkbox = el(doc, "input", {
      type: "checkbox",
      "data-role": "shortlist",
      checked: this.shortlisted.has(key),
      onchange: () => void this.shortlist(key, entry, card, checkbox),
      onclick: () => void this.shortlist(key, entry, card, checkbox),
    }) as HTMLInputElement;
    card.appendChild(el(doc, "label", { class: "shortlist-box" }, [checkbox, "shortlist"]));

    // swipe right does the same thing as the checkbox; left just dismisses
    let downX: number | null = null;
    card.addEventListener("pointerdown", (ev) => {
      downX = (ev as PointerEvent).clientX;
    });
    card.addEventListener("pointerup", (ev) => {
      if (downX === null) return;
      const delta = (ev as PointerEvent).clientX - downX;
      downX = null;
      if (delta >= SWIPE_THRESHOLD_PX) {
        void this.shortlist(key, entry, card, checkbox);
      } else if (delta <= -SWIPE_THRESHOLD_PX) {
        card.classList.add("dismissed");
      }
    });
    return card;
  }

  private async shortlist(
    key: string,
    entry: { jobId: string; candidateId: string },
    card: HTMLElement,
    checkbox: HTMLInputElement,
  ): Promise<void> {
    if (this.inFlight.has(key) || this.shortlisted.has(key)) {
      checkbox.checked = this.shortlisted.has(key);
      return;
    }
    this.inFlight.add(key);
    try {
      await this.api.postEvent(entry.jobId, entry.candidateId, this.session.shortlistEvent());
      this.shortlisted.add(key);
      checkbox.checked = true;
      checkbox.disabled = true;
      card.classList.add("shortlisted");
      this.onShortlisted?.(key);
    } catch (err) {
      checkbox.checked = false;
      card.classList.remove("shortlisted");
      toast(this.root, (err as ApiError).message ?? "shortlist failed");
    } finally {
      this.inFlight.delete(key);
    }
  }
}
