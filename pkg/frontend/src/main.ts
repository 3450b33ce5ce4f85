/** Wizard bootstrap: read roster/spec files, start the session, hand off to App. */

import { ServiceError } from "./api.js";
import { App } from "./app.js";
import { renderErrorBanner } from "./views.js";

function readFileText(input: HTMLInputElement): Promise<string> {
  const file = input.files?.[0];
  if (!file) return Promise.reject(new Error(`${input.id}: choose a file first`));
  return file.text();
}

function parseJsonField(text: string, field: string): unknown {
  try {
    return JSON.parse(text);
  } catch {
    throw new Error(`${field} is not valid JSON`);
  }
}

function wireWizard(): void {
  const form = document.getElementById("wizard") as HTMLFormElement;
  const rosterInput = document.getElementById("roster-file") as HTMLInputElement;
  const specInput = document.getElementById("spec-file") as HTMLInputElement;
  const baseUrlInput = document.getElementById("base-url") as HTMLInputElement;
  const wizardError = document.getElementById("wizard-error") as HTMLElement;
  const screen = document.getElementById("screen") as HTMLElement;

  form.addEventListener("submit", (event) => {
    event.preventDefault();
    wizardError.innerHTML = "";
    void (async () => {
      try {
        const roster = parseJsonField(await readFileText(rosterInput), "roster file");
        const spec = parseJsonField(await readFileText(specInput), "spec file");
        const app = new App(baseUrlInput.value || "http://127.0.0.1:8080", screen);
        form.hidden = true;
        await app.startSession(roster, spec);
      } catch (err) {
        // Service validation errors surface inline, next to the form.
        form.hidden = false;
        screen.innerHTML = "";
        if (err instanceof ServiceError) {
          wizardError.innerHTML = renderErrorBanner(err.errorCode, err.message, err.field);
        } else {
          const message = err instanceof Error ? err.message : String(err);
          wizardError.innerHTML = renderErrorBanner("InvalidInput", message);
        }
      }
    })();
  });
}

window.addEventListener("DOMContentLoaded", wireWizard);
