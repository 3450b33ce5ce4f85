// src/api.ts
var ServiceError = class extends Error {
  constructor(status, errorCode, message, field) {
    super(message);
    this.status = status;
    this.errorCode = errorCode;
    this.field = field;
    this.name = "ServiceError";
  }
  status;
  errorCode;
  field;
};
var NetworkError = class extends Error {
  constructor(message) {
    super(message);
    this.name = "NetworkError";
  }
};
async function request(url, init) {
  let response;
  try {
    response = await fetch(url, init);
  } catch (err) {
    throw new NetworkError(err instanceof Error ? err.message : String(err));
  }
  let body = null;
  try {
    body = await response.json();
  } catch {
  }
  if (!response.ok) {
    const err = body ?? {};
    throw new ServiceError(
      response.status,
      err.error_code ?? "UnknownError",
      err.message ?? `request failed with status ${response.status}`,
      err.field
    );
  }
  return body;
}
function post(payload) {
  return {
    method: "POST",
    headers: { "content-type": "application/json" },
    body: JSON.stringify(payload)
  };
}
var SessionApi = class {
  constructor(baseUrl) {
    this.baseUrl = baseUrl;
  }
  baseUrl;
  url(path) {
    return `${this.baseUrl.replace(/\/$/, "")}${path}`;
  }
  async createSession(roster, spec, evolveConfig, banditParams) {
    const body = { roster, spec };
    if (evolveConfig !== void 0) body.evolve_config = evolveConfig;
    if (banditParams !== void 0) body.bandit_params = banditParams;
    const result = await request(this.url("/sessions"), post(body));
    return result.session_id;
  }
  evolve(sessionId) {
    return request(this.url(`/sessions/${sessionId}/evolve`), { method: "POST" });
  }
  getRound(sessionId) {
    return request(this.url(`/sessions/${sessionId}/round`));
  }
  submitChoice(sessionId, nonce, choice) {
    return request(this.url(`/sessions/${sessionId}/choice`), post({ nonce, choice }));
  }
  getRecommendation(sessionId) {
    return request(this.url(`/sessions/${sessionId}/recommendation`));
  }
};
export {
  NetworkError,
  ServiceError,
  SessionApi
};
