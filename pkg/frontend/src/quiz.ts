/* The 25-question personality quiz as a one-question-per-screen wizard.
 *
 * Submission is gated twice: the submit button is disabled until every
 * question has an answer, and submit() itself refuses to fire the call
 * when the set is incomplete, so a stray click can never send a partial
 * response. A failed submit keeps every answer in place.
 */

import type { ApiError, QuizQuestionView, QuizResult } from "./api.js";
import { clear, el } from "./dom.js";

export interface QuizApi {
  quizQuestions(): Promise<{ questions: QuizQuestionView[]; total: number }>;
  submitQuiz(candidateId: string, answers: Record<string, "a" | "b">): Promise<QuizResult>;
}

const AXIS_LABELS: Record<string, string> = {
  sociability: "sociability",
  decision_basis: "decision basis",
  work_style: "work style",
  authority: "authority",
  structure: "structure",
};

export class QuizWizard {
  private questions: QuizQuestionView[] = [];
  private readonly answers = new Map<string, "a" | "b">();
  private index = 0;
  private error: string | null = null;
  private result: QuizResult | null = null;
  private inFlight = false;

  constructor(
    private readonly root: HTMLElement,
    private readonly api: QuizApi,
    private readonly candidateId: string,
    private readonly onComplete?: (result: QuizResult) => void,
  ) {}

  async start(): Promise<void> {
    const response = await this.api.quizQuestions();
    this.questions = response.questions;
    this.answers.clear();
    this.index = 0;
    this.error = null;
    this.result = null;
    this.render();
  }

  answeredCount(): number {
    return this.answers.size;
  }

  get canSubmit(): boolean {
    return this.questions.length > 0 && this.answers.size === this.questions.length;
  }

  choose(questionId: string, choice: "a" | "b"): void {
    this.answers.set(questionId, choice);
    this.render();
  }

  goTo(index: number): void {
    this.index = Math.min(Math.max(index, 0), this.questions.length - 1);
    this.render();
  }

  async submit(): Promise<void> {
    if (!this.canSubmit || this.inFlight) return;
    this.inFlight = true;
    try {
      const result = await this.api.submitQuiz(
        this.candidateId,
        Object.fromEntries(this.answers) as Record<string, "a" | "b">,
      );
      this.result = result;
      this.error = null;
      this.render();
      this.onComplete?.(result);
    } catch (err) {
      this.error = (err as ApiError).message ?? "submission failed";
      this.render();
    } finally {
      this.inFlight = false;
    }
  }

  private render(): void {
    const doc = this.root.ownerDocument;
    clear(this.root);

    if (this.result) {
      this.root.appendChild(this.renderResult(doc, this.result));
      return;
    }
    if (this.questions.length === 0) {
      this.root.appendChild(el(doc, "p", {}, ["loading questions..."]));
      return;
    }

    const question = this.questions[this.index]!;
    const total = this.questions.length;
    const pane = el(doc, "div", { class: "quiz" });

    pane.appendChild(
      el(doc, "div", { class: "quiz-progress" }, [
        `question ${this.index + 1} of ${total}`,
      ]),
    );
    const bar = el(doc, "div", { class: "progress-track" });
    bar.appendChild(
      el(doc, "div", {
        class: "progress-fill",
        style: `width: ${(this.answers.size / total) * 100}%`,
      }),
    );
    pane.appendChild(bar);
    pane.appendChild(
      el(doc, "div", { class: "quiz-answered" }, [`${this.answers.size} of ${total} answered`]),
    );

    if (this.error) {
      pane.appendChild(el(doc, "div", { class: "error-banner", role: "alert" }, [this.error]));
    }

    pane.appendChild(el(doc, "p", { class: "quiz-question" }, [question.text]));

    const chosen = this.answers.get(question.id);
    for (const choice of ["a", "b"] as const) {
      const input = el(doc, "input", {
        type: "radio",
        name: question.id,
        "data-choice": choice,
        checked: chosen === choice,
        onchange: () => this.choose(question.id, choice),
        onclick: () => this.choose(question.id, choice),
      });
      pane.appendChild(
        el(doc, "label", { class: "quiz-option" }, [input, question.options[choice]]),
      );
    }

    const nav = el(doc, "div", { class: "quiz-nav" });
    nav.appendChild(
      el(doc, "button", {
        type: "button",
        "data-role": "quiz-prev",
        disabled: this.index === 0,
        onclick: () => this.goTo(this.index - 1),
      }, ["back"]),
    );
    if (this.index < total - 1) {
      nav.appendChild(
        el(doc, "button", {
          type: "button",
          "data-role": "quiz-next",
          disabled: !this.answers.has(question.id),
          onclick: () => this.goTo(this.index + 1),
        }, ["next"]),
      );
    } else {
      nav.appendChild(
        el(doc, "button", {
          type: "button",
          "data-role": "quiz-submit",
          disabled: !this.canSubmit,
          onclick: () => void this.submit(),
        }, ["submit answers"]),
      );
    }
    pane.appendChild(nav);
    this.root.appendChild(pane);
  }

  private renderResult(doc: Document, result: QuizResult): HTMLElement {
    const pane = el(doc, "div", { class: "quiz quiz-done" });
    pane.appendChild(el(doc, "h2", {}, ["your personality code"]));
    pane.appendChild(el(doc, "div", { class: "quiz-result-code" }, [result.code]));
    const list = el(doc, "dl", { class: "quiz-tallies" });
    for (const [axis, counts] of Object.entries(result.tallies)) {
      list.appendChild(el(doc, "dt", {}, [AXIS_LABELS[axis] ?? axis]));
      list.appendChild(el(doc, "dd", {}, [`${counts[0]} / ${counts[1]}`]));
    }
    pane.appendChild(list);
    return pane;
  }
}
