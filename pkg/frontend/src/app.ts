/* Browser bootstrap: registration, tab switching and pane wiring.
 * All the behavior worth testing lives in the pane modules; this file
 * is the glue that holds them onto one page. */

import { ApiClient, ApiError } from "./api.js";
import { clear, el, toast } from "./dom.js";
import { FeedPane } from "./feed.js";
import { HandshakePane } from "./handshake.js";
import { NotificationsPane } from "./notify.js";
import { QuizWizard } from "./quiz.js";
import { ViewSession } from "./state.js";

declare global {
  interface Window {
    TALENTMATCH_BASE?: string;
  }
}

const api = new ApiClient(window.TALENTMATCH_BASE ?? "");
let session: ViewSession | null = null;

function field(doc: Document, label: string, name: string, type = "text"): HTMLElement {
  return el(doc, "label", { class: "field" }, [
    label,
    el(doc, "input", { type, name }),
  ]);
}

function formValues(form: HTMLElement): Record<string, string> {
  const values: Record<string, string> = {};
  for (const input of Array.from(form.querySelectorAll("input"))) {
    values[input.getAttribute("name") ?? ""] = (input as HTMLInputElement).value;
  }
  return values;
}

function renderSessionBar(doc: Document, bar: HTMLElement): void {
  clear(bar);
  if (session) {
    bar.appendChild(
      el(doc, "span", {}, [`signed in as ${session.actor} ${session.subjectId}`]),
    );
  } else {
    bar.appendChild(el(doc, "span", {}, ["not signed in"]));
  }
}

function registrationPane(doc: Document, bar: HTMLElement): HTMLElement {
  const pane = el(doc, "div", { class: "pane" });

  const candidateForm = el(doc, "form", { class: "register-candidate" }, [
    el(doc, "h3", {}, ["register as a candidate"]),
    field(doc, "first name", "first_name"),
    field(doc, "last name", "last_name"),
    field(doc, "email", "email"),
    field(doc, "date of birth", "date_of_birth", "date"),
    field(doc, "country", "country"),
    field(doc, "region", "region"),
    field(doc, "city", "city"),
    field(doc, "salary min", "salary_min", "number"),
    field(doc, "salary max", "salary_max", "number"),
    field(doc, "employment type (full_time/part_time/casual/contract)", "employment_type"),
    field(doc, "gender (female/male/nonbinary/unspecified)", "gender"),
    el(doc, "button", { type: "submit" }, ["register"]),
  ]);
  candidateForm.addEventListener("submit", (ev) => {
    ev.preventDefault();
    const v = formValues(candidateForm);
    void api
      .registerCandidate({
        first_name: v.first_name,
        last_name: v.last_name,
        email: v.email,
        date_of_birth: v.date_of_birth,
        location: { country: v.country, region: v.region || null, city: v.city || null },
        salary_min: Number(v.salary_min),
        salary_max: Number(v.salary_max),
        employment_type: v.employment_type,
        gender: v.gender || "unspecified",
        skills: [],
      })
      .then((res) => {
        session = new ViewSession("candidate", res.candidate.candidate_id, res.token);
        api.setToken(res.token);
        renderSessionBar(doc, bar);
        toast(pane, `registered, keep your token: ${res.token}`);
      })
      .catch((err) => toast(pane, (err as ApiError).message));
  });

  const employerForm = el(doc, "form", { class: "register-employer" }, [
    el(doc, "h3", {}, ["register as an employer"]),
    field(doc, "business name", "business_name"),
    field(doc, "HR contact name", "hr_name"),
    field(doc, "HR phone", "hr_phone"),
    field(doc, "HR email", "hr_email"),
    el(doc, "button", { type: "submit" }, ["register"]),
  ]);
  employerForm.addEventListener("submit", (ev) => {
    ev.preventDefault();
    const v = formValues(employerForm);
    void api
      .registerEmployer({
        business_name: v.business_name,
        hr_contacts: [{ name: v.hr_name, phone: v.hr_phone, email: v.hr_email }],
      })
      .then((res) => {
        session = new ViewSession("employer", res.employer.employer_id, res.token);
        api.setToken(res.token);
        renderSessionBar(doc, bar);
        toast(pane, `registered, keep your token: ${res.token}`);
      })
      .catch((err) => toast(pane, (err as ApiError).message));
  });

  const resumeForm = el(doc, "form", { class: "resume-session" }, [
    el(doc, "h3", {}, ["resume with a token"]),
    field(doc, "actor (candidate/employer)", "actor"),
    field(doc, "your id", "subject_id"),
    field(doc, "token", "token"),
    el(doc, "button", { type: "submit" }, ["resume"]),
  ]);
  resumeForm.addEventListener("submit", (ev) => {
    ev.preventDefault();
    const v = formValues(resumeForm);
    const actor = v.actor === "employer" ? "employer" : "candidate";
    session = new ViewSession(actor, v.subject_id ?? "", v.token ?? "");
    api.setToken(v.token ?? "");
    renderSessionBar(doc, bar);
  });

  pane.appendChild(candidateForm);
  pane.appendChild(employerForm);
  pane.appendChild(resumeForm);
  return pane;
}

function quizPane(doc: Document): HTMLElement {
  const pane = el(doc, "div", { class: "pane" });
  if (!session || session.actor !== "candidate") {
    pane.appendChild(el(doc, "p", {}, ["sign in as a candidate to take the quiz"]));
    return pane;
  }
  const wizard = new QuizWizard(pane, api, session.subjectId);
  void wizard.start().catch((err) => toast(pane, (err as ApiError).message));
  return pane;
}

function feedPane(doc: Document): HTMLElement {
  const pane = el(doc, "div", { class: "pane" });
  if (!session) {
    pane.appendChild(el(doc, "p", {}, ["sign in first"]));
    return pane;
  }
  const active = session;
  const cards = el(doc, "div", { class: "feed" });
  const feed = new FeedPane(cards, api, active);
  if (active.actor === "employer") {
    const form = el(doc, "form", {}, [
      field(doc, "job id", "job_id"),
      el(doc, "button", { type: "submit" }, ["load feed"]),
    ]);
    form.addEventListener("submit", (ev) => {
      ev.preventDefault();
      const jobId = formValues(form).job_id ?? "";
      void feed.showForJob(jobId).catch((err) => toast(pane, (err as ApiError).message));
    });
    pane.appendChild(form);
  } else {
    void feed
      .showForCandidate(active.subjectId)
      .catch((err) => toast(pane, (err as ApiError).message));
  }
  pane.appendChild(cards);
  return pane;
}

function pairPane(doc: Document): HTMLElement {
  const pane = el(doc, "div", { class: "pane" });
  if (!session) {
    pane.appendChild(el(doc, "p", {}, ["sign in first"]));
    return pane;
  }
  const active = session;
  const view = el(doc, "div", { class: "pair-view" });
  const handshake = new HandshakePane(view, api, active);
  const form = el(doc, "form", {}, [
    field(doc, "job id", "job_id"),
    field(doc, "candidate id", "candidate_id"),
    el(doc, "button", { type: "submit" }, ["open pair"]),
  ]);
  form.addEventListener("submit", (ev) => {
    ev.preventDefault();
    const v = formValues(form);
    void handshake
      .open({ jobId: v.job_id ?? "", candidateId: v.candidate_id ?? "" })
      .then(() => handshake.startPolling())
      .catch((err) => toast(pane, (err as ApiError).message));
  });
  pane.appendChild(form);
  pane.appendChild(view);
  return pane;
}

function notifyPane(doc: Document): HTMLElement {
  const pane = el(doc, "div", { class: "pane" });
  if (!session) {
    pane.appendChild(el(doc, "p", {}, ["sign in first"]));
    return pane;
  }
  const notifications = new NotificationsPane(pane, api, session);
  void notifications.refresh().catch((err) => toast(pane, (err as ApiError).message));
  notifications.startPolling();
  return pane;
}

function main(): void {
  const doc = document;
  const root = doc.getElementById("app");
  if (!root) return;

  const bar = el(doc, "div", { class: "session-bar" });
  renderSessionBar(doc, bar);

  const content = el(doc, "main", { class: "content" });
  const tabs: [string, (doc: Document) => HTMLElement][] = [
    ["account", (d) => registrationPane(d, bar)],
    ["quiz", quizPane],
    ["feed", feedPane],
    ["pair", pairPane],
    ["notifications", notifyPane],
  ];
  const nav = el(doc, "nav", { class: "tabs" });
  for (const [name, build] of tabs) {
    nav.appendChild(
      el(doc, "button", {
        type: "button",
        onclick: () => {
          clear(content);
          content.appendChild(build(doc));
        },
      }, [name]),
    );
  }

  root.appendChild(bar);
  root.appendChild(nav);
  root.appendChild(content);
  content.appendChild(registrationPane(doc, bar));
}

main();
