/* Typed client for the talentmatch HTTP API.
 *
 * Every number and every ordering rendered by the UI comes straight out
 * of these response payloads; nothing in the front end rescores or
 * resorts. Errors arrive as the service's envelope and are rethrown as
 * ApiError so panes can branch on the code.
 */

export interface LocationView {
  country: string;
  region: string | null;
  city: string | null;
}

export interface CandidateView {
  candidate_id: string;
  first_name: string;
  last_name: string;
  location: LocationView;
  employment_type: string;
  skills: string[];
  personality: string | null;
  photo_ref: string | null;
  email?: string;
  date_of_birth?: string;
  salary_min?: number;
  salary_max?: number;
  salary_open?: boolean;
  gender?: string;
}

export interface JobView {
  job_id: string;
  employer_id: string;
  business_name?: string;
  title: string;
  summary: string;
  location: LocationView;
  offered_salary: number;
  employment_type: string;
  required_skills: string[];
  ideal_personality: string | null;
  ideal_age: number | null;
  ideal_gender: string | null;
  status: string;
}

export type Breakdown = Record<string, number | null>;

export interface EmployerFeedEntry extends CandidateView {
  percentage: number;
  breakdown: Breakdown;
  effective_weights: Record<string, number>;
}

export interface CandidateFeedEntry {
  job_id: string;
  title: string;
  summary: string;
  business_name: string;
  location: LocationView;
  offered_salary: number;
  employment_type: string;
  required_skills: string[];
  percentage: number;
  breakdown: Breakdown;
  effective_weights: Record<string, number>;
}

export interface FeedResponse<E> {
  owner: string;
  generated_at: string;
  total: number;
  items: E[];
  limit?: number;
  offset?: number;
}

export interface QuizQuestionView {
  id: string;
  text: string;
  options: { a: string; b: string };
}

export interface QuizResult {
  code: string;
  tallies: Record<string, [number, number]>;
  taken_at: string;
}

export interface StatusView {
  job_id: string;
  candidate_id: string;
  employer_shortlisted: boolean;
  candidate_shortlisted: boolean;
  contact_initiated: boolean;
  contact_accepted: boolean;
  timestamps: Record<string, string | null>;
  stages_complete: number;
  stage: string;
  awaiting: string | null;
  messaging_enabled: boolean;
  video_state: string;
  video_requested_by: string | null;
  contact?: {
    candidate: { name: string; email: string };
    employer: { business_name: string; hr_contacts: { name: string; phone: string; email: string }[] };
  };
}

export interface MessageView {
  message_id: string;
  job_id: string;
  candidate_id: string;
  sender: string;
  body: string;
  sent_at: string;
}

export interface NotificationView {
  notification_id: string;
  kind: string;
  job_id: string;
  candidate_id: string;
  created_at: string;
  read: boolean;
}

export interface Paged<T> {
  items: T[];
  total: number;
  limit: number;
  offset: number;
}

export type EventKind =
  | "employer_shortlists"
  | "candidate_shortlists"
  | "employer_initiates_contact"
  | "candidate_accepts_contact"
  | "video_requested"
  | "video_accepted";

export class ApiError extends Error {
  constructor(
    readonly status: number,
    readonly code: string,
    message: string,
    readonly details: unknown[] = [],
  ) {
    super(message);
    this.name = "ApiError";
  }
}

export type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

interface ErrorEnvelope {
  error?: { code: string; message: string; details: unknown[] };
}

export class ApiClient {
  private token: string | null = null;

  constructor(
    private readonly baseUrl: string = "",
    private readonly fetchImpl: FetchLike = (input, init) => fetch(input, init),
  ) {}

  setToken(token: string | null): void {
    this.token = token;
  }

  private async request<T>(method: string, path: string, body?: unknown): Promise<T> {
    const headers: Record<string, string> = {};
    if (body !== undefined) headers["content-type"] = "application/json";
    if (this.token) headers["authorization"] = `Bearer ${this.token}`;
    const response = await this.fetchImpl(this.baseUrl + path, {
      method,
      headers,
      body: body === undefined ? undefined : JSON.stringify(body),
    });
    const text = await response.text();
    let doc: unknown = null;
    if (text) {
      try {
        doc = JSON.parse(text);
      } catch {
        doc = null;
      }
    }
    if (!response.ok) {
      const envelope = (doc ?? {}) as ErrorEnvelope;
      if (envelope.error) {
        throw new ApiError(
          response.status,
          envelope.error.code,
          envelope.error.message,
          envelope.error.details,
        );
      }
      throw new ApiError(response.status, "unknown", `unexpected ${response.status} response`);
    }
    return doc as T;
  }

  // -- open endpoints ------------------------------------------------------

  health(): Promise<{ status: string }> {
    return this.request("GET", "/health");
  }

  listSkills(): Promise<Paged<{ skill_id: string; name: string; category: string }>> {
    return this.request("GET", "/skills");
  }

  // -- accounts --------------------------------------------------------------

  registerCandidate(body: unknown): Promise<{ candidate: CandidateView; token: string }> {
    return this.request("POST", "/candidates", body);
  }

  registerEmployer(body: unknown): Promise<{ employer: { employer_id: string }; token: string }> {
    return this.request("POST", "/employers", body);
  }

  getCandidate(candidateId: string): Promise<{ candidate: CandidateView }> {
    return this.request("GET", `/candidates/${candidateId}`);
  }

  patchCandidate(candidateId: string, body: unknown): Promise<{ candidate: CandidateView }> {
    return this.request("PATCH", `/candidates/${candidateId}`, body);
  }

  createSkill(name: string, category: string): Promise<{ skill: { skill_id: string } }> {
    return this.request("POST", "/skills", { name, category });
  }

  // -- quiz --------------------------------------------------------------------

  quizQuestions(): Promise<{ questions: QuizQuestionView[]; total: number }> {
    return this.request("GET", "/quiz/questions");
  }

  submitQuiz(candidateId: string, answers: Record<string, "a" | "b">): Promise<QuizResult> {
    return this.request("POST", `/candidates/${candidateId}/quiz`, { answers });
  }

  getPersonality(candidateId: string): Promise<QuizResult> {
    return this.request("GET", `/candidates/${candidateId}/personality`);
  }

  // -- jobs and feeds -----------------------------------------------------------

  postJob(body: unknown): Promise<{ job: JobView; feed: FeedResponse<EmployerFeedEntry> }> {
    return this.request("POST", "/jobs", body);
  }

  jobFeed(jobId: string): Promise<FeedResponse<EmployerFeedEntry>> {
    return this.request("GET", `/jobs/${jobId}/feed`);
  }

  candidateFeed(candidateId: string): Promise<FeedResponse<CandidateFeedEntry>> {
    return this.request("GET", `/candidates/${candidateId}/feed`);
  }

  // -- handshake, chat, notifications ---------------------------------------------

  pairStatus(jobId: string, candidateId: string): Promise<{ status: StatusView }> {
    return this.request("GET", `/shortlists/${jobId}/${candidateId}`);
  }

  postEvent(jobId: string, candidateId: string, kind: EventKind): Promise<{ status: StatusView }> {
    return this.request("POST", `/shortlists/${jobId}/${candidateId}/events`, { kind });
  }

  listMessages(jobId: string, candidateId: string): Promise<Paged<MessageView>> {
    return this.request("GET", `/shortlists/${jobId}/${candidateId}/messages`);
  }

  sendMessage(jobId: string, candidateId: string, body: string): Promise<{ message: MessageView }> {
    return this.request("POST", `/shortlists/${jobId}/${candidateId}/messages`, { body });
  }

  notifications(unreadOnly = false): Promise<Paged<NotificationView> & { unread: number }> {
    const query = unreadOnly ? "?unread_only=true" : "";
    return this.request("GET", `/notifications${query}`);
  }

  markRead(notificationId: string): Promise<{ notification: NotificationView }> {
    return this.request("POST", `/notifications/${notificationId}/read`);
  }
}
