/** Pure HTML renderers. Every number shown comes from a service payload. */

import type { Objectives, RecommendationPayload, RoundPayload, TeamCard } from "./api.js";

export function esc(value: unknown): string {
  return String(value)
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}

const OBJECTIVE_LABELS: ReadonlyArray<[keyof Objectives, string]> = [
  ["diversity", "Diversity"],
  ["cohesion", "Cohesion"],
  ["coverage", "Coverage"],
];

/** Three bars on a 0-1 scale; width is the objective value as a percentage. */
export function renderObjectiveBars(objectives: Objectives): string {
  const bars = OBJECTIVE_LABELS.map(([key, label]) => {
    const value = objectives[key];
    const width = (value * 100).toFixed(1);
    return `
      <div class="objective-row">
        <span class="objective-label">${label}</span>
        <div class="objective-track">
          <div class="objective-bar objective-${key}" style="width: ${width}%"></div>
        </div>
        <span class="objective-value">${value.toFixed(3)}</span>
      </div>`;
  });
  return `<div class="objective-bars">${bars.join("")}</div>`;
}

function renderMembers(card: TeamCard): string {
  const rows = card.member_ids.map((id, i) => {
    const name = card.member_names[i] || id;
    const org = card.member_orgs?.[i] ?? "";
    const tags = card.member_expertise?.[i] ?? [];
    const tagHtml = tags.map((t) => `<span class="tag">${esc(t)}</span>`).join(" ");
    return `
      <li class="member">
        <span class="member-name">${esc(name)}</span>
        ${org ? `<span class="member-org">${esc(org)}</span>` : ""}
        ${tagHtml}
      </li>`;
  });
  return `<ul class="members">${rows.join("")}</ul>`;
}

export function renderRound(round: RoundPayload, roundNumber: number): string {
  const cards = round.teams.map(
    (team) => `
    <article class="card" data-arm="${team.arm_index}">
      ${renderMembers(team)}
      ${renderObjectiveBars(team.objectives)}
      <button class="choose" data-arm="${team.arm_index}">Pick this team</button>
    </article>`,
  );
  return `
    <section class="round" data-nonce="${esc(round.nonce)}">
      <h2>Round ${roundNumber}: which team do you prefer?</h2>
      <div class="cards">${cards.join("")}</div>
      <button class="skip">None of these</button>
    </section>`;
}

export function renderRecommendation(rec: RecommendationPayload): string {
  const members = rec.team.member_ids
    .map((id, i) => `<li class="member"><span class="member-name">${esc(rec.team.member_names[i] || id)}</span></li>`)
    .join("");
  const armRows = rec.arms
    .map(
      (arm) => `
      <tr><td>${arm.arm_index}</td><td>${arm.pulls}</td><td>${arm.wins}</td></tr>`,
    )
    .join("");
  return `
    <section class="recommendation">
      <h2>Recommended team</h2>
      <ul class="members">${members}</ul>
      ${renderObjectiveBars(rec.objectives)}
      <p class="rounds-used">Decided after ${rec.rounds_used} round(s).</p>
      <table class="arm-stats">
        <thead><tr><th>Arm</th><th>Shown</th><th>Chosen</th></tr></thead>
        <tbody>${armRows}</tbody>
      </table>
    </section>`;
}

export function renderErrorBanner(code: string, message: string, field?: string): string {
  const where = field ? ` <span class="error-field">(${esc(field)})</span>` : "";
  return `<div class="error-banner" role="alert"><strong>${esc(code)}</strong>${where}: ${esc(message)}</div>`;
}

export function renderRetryPrompt(message: string): string {
  return `
    <div class="retry-prompt" role="alert">
      <p>Cannot reach the service: ${esc(message)}</p>
      <button class="retry">Retry</button>
    </div>`;
}

export function renderProgress(message: string): string {
  return `<p class="progress">${esc(message)}</p>`;
}
