/* Session state for one browser context. Everything shown in the UI is
 * derived from API responses; the session only remembers who we are and
 * what we are looking at. */

import type { EventKind } from "./api.js";

export type Actor = "candidate" | "employer";

export interface PairRef {
  jobId: string;
  candidateId: string;
}

export class ViewSession {
  activePair: PairRef | null = null;
  unread = 0;

  constructor(
    readonly actor: Actor,
    readonly subjectId: string,
    readonly token: string,
  ) {}

  /** The shortlist event this side of the pair is allowed to send. */
  shortlistEvent(): EventKind {
    return this.actor === "employer" ? "employer_shortlists" : "candidate_shortlists";
  }
}
