/** Typed client for the teamforge session HTTP API. */

export interface Objectives {
  diversity: number;
  cohesion: number;
  coverage: number;
}

export interface TeamCard {
  arm_index: number;
  member_ids: string[];
  member_names: string[];
  member_orgs?: string[];
  member_expertise?: string[][];
  objectives: Objectives;
}

export interface RoundPayload {
  nonce: string;
  teams: TeamCard[];
}

export interface ChoiceResult {
  phase: string;
  rounds_used: number;
}

export interface ArmStats {
  arm_index: number;
  pulls: number;
  wins: number;
}

export interface RecommendationPayload {
  team: { member_ids: string[]; member_names: string[] };
  objectives: Objectives;
  rounds_used: number;
  arms: ArmStats[];
}

/** Service rejected the request; carries the structured error body. */
export class ServiceError extends Error {
  constructor(
    readonly status: number,
    readonly errorCode: string,
    message: string,
    readonly field?: string,
  ) {
    super(message);
    this.name = "ServiceError";
  }
}

/** The service could not be reached at all. */
export class NetworkError extends Error {
  constructor(message: string) {
    super(message);
    this.name = "NetworkError";
  }
}

async function request<T>(url: string, init?: RequestInit): Promise<T> {
  let response: Response;
  try {
    response = await fetch(url, init);
  } catch (err) {
    throw new NetworkError(err instanceof Error ? err.message : String(err));
  }
  let body: unknown = null;
  try {
    body = await response.json();
  } catch {
    // fall through: a non-JSON body on an error status still throws below
  }
  if (!response.ok) {
    const err = (body ?? {}) as { error_code?: string; message?: string; field?: string };
    throw new ServiceError(
      response.status,
      err.error_code ?? "UnknownError",
      err.message ?? `request failed with status ${response.status}`,
      err.field,
    );
  }
  return body as T;
}

function post(payload: unknown): RequestInit {
  return {
    method: "POST",
    headers: { "content-type": "application/json" },
    body: JSON.stringify(payload),
  };
}

export class SessionApi {
  constructor(readonly baseUrl: string) {}

  private url(path: string): string {
    return `${this.baseUrl.replace(/\/$/, "")}${path}`;
  }

  async createSession(
    roster: unknown,
    spec: unknown,
    evolveConfig?: unknown,
    banditParams?: unknown,
  ): Promise<string> {
    const body: Record<string, unknown> = { roster, spec };
    if (evolveConfig !== undefined) body.evolve_config = evolveConfig;
    if (banditParams !== undefined) body.bandit_params = banditParams;
    const result = await request<{ session_id: string }>(this.url("/sessions"), post(body));
    return result.session_id;
  }

  evolve(sessionId: string): Promise<{ archive_size: number; arm_count: number }> {
    return request(this.url(`/sessions/${sessionId}/evolve`), { method: "POST" });
  }

  getRound(sessionId: string): Promise<RoundPayload> {
    return request(this.url(`/sessions/${sessionId}/round`));
  }

  submitChoice(sessionId: string, nonce: string, choice: number | "skip"): Promise<ChoiceResult> {
    return request(this.url(`/sessions/${sessionId}/choice`), post({ nonce, choice }));
  }

  getRecommendation(sessionId: string): Promise<RecommendationPayload> {
    return request(this.url(`/sessions/${sessionId}/recommendation`));
  }
}
