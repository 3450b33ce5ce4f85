/** Screen controller: wizard -> rounds -> recommendation.
 *
 * State is just the session id and the one outstanding nonce; everything
 * rendered is refetched from the service, so a reload can always resume via
 * GET /round.
 */

import { NetworkError, ServiceError, SessionApi } from "./api.js";
import {
  renderErrorBanner,
  renderProgress,
  renderRecommendation,
  renderRetryPrompt,
  renderRound,
} from "./views.js";

export class App {
  private api: SessionApi;
  sessionId: string | null = null;
  nonce: string | null = null;
  private roundNumber = 0;
  private retryAction: (() => Promise<void>) | null = null;

  constructor(
    baseUrl: string,
    private root: HTMLElement,
  ) {
    this.api = new SessionApi(baseUrl);
    this.root.addEventListener("click", (event) => {
      const target = event.target as HTMLElement;
      if (target.matches("button.choose")) {
        void this.choose(Number(target.dataset.arm));
      } else if (target.matches("button.skip")) {
        void this.choose("skip");
      } else if (target.matches("button.retry")) {
        const action = this.retryAction;
        this.retryAction = null;
        if (action) void action();
      }
    });
  }

  /** Upload roster/spec, evolve, land on the first round.
   *
   * Validation errors (4xx) propagate to the wizard so they can sit next to
   * the offending field; an unreachable service renders the retry prompt.
   */
  async startSession(
    roster: unknown,
    spec: unknown,
    evolveConfig?: unknown,
    banditParams?: unknown,
  ): Promise<void> {
    const action = async () => {
      this.render(renderProgress("Creating session..."));
      this.sessionId = await this.api.createSession(roster, spec, evolveConfig, banditParams);
      this.render(renderProgress("Evolving candidate teams..."));
      await this.api.evolve(this.sessionId);
      await this.showRound();
    };
    try {
      await action();
    } catch (err) {
      if (err instanceof NetworkError) {
        this.retryAction = action;
        this.render(renderRetryPrompt(err.message));
        return;
      }
      throw err;
    }
  }

  /** Fetch and render the current round; keeps exactly one outstanding nonce. */
  async showRound(): Promise<void> {
    if (!this.sessionId) return;
    const round = await this.api.getRound(this.sessionId);
    if (round.nonce !== this.nonce) {
      this.roundNumber += 1; // idempotent refetches keep the same number
      this.nonce = round.nonce;
    }
    this.render(renderRound(round, this.roundNumber));
  }

  /** Card click or skip; a stale nonce (double click, raced tab) refetches quietly. */
  async choose(choice: number | "skip"): Promise<void> {
    if (!this.sessionId || this.nonce === null) return;
    const nonce = this.nonce;
    await this.guard(async () => {
      try {
        const result = await this.api.submitChoice(this.sessionId!, nonce, choice);
        if (result.phase === "recommended") {
          await this.showRecommendation();
        } else {
          await this.showRound();
        }
      } catch (err) {
        if (err instanceof ServiceError && err.errorCode === "StaleNonce") {
          await this.showRound();
          return;
        }
        throw err;
      }
    });
  }

  async showRecommendation(): Promise<void> {
    if (!this.sessionId) return;
    const rec = await this.api.getRecommendation(this.sessionId);
    this.nonce = null;
    this.render(renderRecommendation(rec));
  }

  /** Shared error surface: 4xx banners inline, network failures get a retry. */
  private async guard(action: () => Promise<void>): Promise<void> {
    try {
      await action();
    } catch (err) {
      if (err instanceof NetworkError) {
        this.retryAction = action;
        this.render(renderRetryPrompt(err.message));
      } else if (err instanceof ServiceError) {
        this.render(renderErrorBanner(err.errorCode, err.message, err.field));
      } else {
        throw err;
      }
    }
  }

  private render(html: string): void {
    this.root.innerHTML = html;
  }
}
