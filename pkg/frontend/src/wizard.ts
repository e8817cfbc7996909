import { ApiClient, TravelEntryBody, TravelResponse } from "./api.js";
import { dayLabel } from "./format.js";
import { attachSuggest } from "./suggest.js";

/** 14-day travel-history wizard.
 *
 * Each step is pre-labelled with the calendar day it covers (registration
 * date minus k days). Days may be skipped; a day counts as filled once any
 * of its fields holds text, and a filled day requires all starred fields.
 * Submission sends only the filled days; with zero filled days the submit
 * control stays disabled and no request leaves the browser.
 */

export const WIZARD_DAYS = 14;

export interface WizardDeps {
  api: ApiClient;
  caseId: string;
  registeredAtIso: string;
  onSubmitted?: (response: TravelResponse) => void;
  suggestDebounceMs?: number;
}

interface DayControls {
  door_no: HTMLInputElement;
  street: HTMLInputElement;
  gn_division: HTMLInputElement;
  contact_tp: HTMLInputElement;
  error: HTMLElement;
}

export interface TravelWizard {
  element: HTMLElement;
  goTo(day: number): void;
  currentDay(): number;
  filledDays(): number[];
  setDay(day: number, values: Partial<Record<keyof Omit<DayControls, "error">, string>>): void;
  submit(): Promise<void>;
  submitButton: HTMLButtonElement;
}

const FIELDS: Array<{ name: keyof Omit<DayControls, "error">; label: string }> = [
  { name: "door_no", label: "Door Number*" },
  { name: "street", label: "Street*" },
  { name: "gn_division", label: "GN Division Name*" },
  { name: "contact_tp", label: "Contact TP*" },
];

export function buildTravelWizard(root: HTMLElement, deps: WizardDeps): TravelWizard {
  root.innerHTML = "";
  const container = document.createElement("div");
  container.className = "travel-wizard";
  const heading = document.createElement("h3");
  heading.textContent = `Travel History Information (last ${WIZARD_DAYS} days)`;
  container.appendChild(heading);

  const indicator = document.createElement("p");
  indicator.className = "wizard-indicator";
  container.appendChild(indicator);

  const steps: HTMLElement[] = [];
  const controls: DayControls[] = [];
  const suggestOf = (source: string) => (prefix: string) =>
    deps.api.suggest(source, prefix).then((r) => r.tokens);

  for (let day = 1; day <= WIZARD_DAYS; day++) {
    const step = document.createElement("fieldset");
    step.className = "wizard-step";
    step.dataset.day = String(day);
    step.hidden = day !== 1;
    const legend = document.createElement("legend");
    legend.textContent = dayLabel(deps.registeredAtIso, day);
    step.appendChild(legend);
    const dayControls = {} as DayControls;
    for (const { name, label } of FIELDS) {
      const wrap = document.createElement("label");
      wrap.className = "field";
      wrap.textContent = `${label} `;
      const input = document.createElement("input");
      input.name = `day${day}_${name}`;
      wrap.appendChild(input);
      step.appendChild(wrap);
      dayControls[name] = input;
      if (name === "gn_division") {
        attachSuggest(input, suggestOf("gn_divisions"), { debounceMs: deps.suggestDebounceMs });
      }
      if (name === "street") {
        attachSuggest(input, suggestOf("streets"), { debounceMs: deps.suggestDebounceMs });
      }
    }
    const error = document.createElement("span");
    error.className = "field-error";
    error.dataset.field = `day${day}`;
    step.appendChild(error);
    dayControls.error = error;
    steps.push(step);
    controls.push(dayControls);
    container.appendChild(step);
  }

  const nav = document.createElement("div");
  nav.className = "wizard-nav";
  const prev = document.createElement("button");
  prev.type = "button";
  prev.textContent = "Previous day";
  const next = document.createElement("button");
  next.type = "button";
  next.textContent = "Next day";
  const submitButton = document.createElement("button");
  submitButton.type = "button";
  submitButton.className = "wizard-submit";
  submitButton.textContent = "Submit travel history";
  nav.append(prev, next, submitButton);
  container.appendChild(nav);

  const status = document.createElement("p");
  status.className = "wizard-guidance";
  container.appendChild(status);
  const result = document.createElement("p");
  result.className = "wizard-status";
  container.appendChild(result);
  root.appendChild(container);

  let current = 1;

  const values = (day: number) => {
    const c = controls[day - 1];
    return {
      door_no: c.door_no.value.trim(),
      street: c.street.value.trim(),
      gn_division: c.gn_division.value.trim(),
      contact_tp: c.contact_tp.value.trim(),
    };
  };
  const isFilled = (day: number) => Object.values(values(day)).some((v) => v !== "");
  const isComplete = (day: number) => Object.values(values(day)).every((v) => v !== "");
  const filledDays = () =>
    Array.from({ length: WIZARD_DAYS }, (_, i) => i + 1).filter(isFilled);

  const refresh = () => {
    const filled = filledDays();
    const partial = filled.filter((day) => !isComplete(day));
    indicator.textContent =
      `Day ${current} of ${WIZARD_DAYS} - ${filled.length} day(s) filled`;
    prev.disabled = current === 1;
    next.disabled = current === WIZARD_DAYS;
    submitButton.disabled = filled.length === 0 || partial.length > 0;
    controls.forEach((c, i) => {
      const day = i + 1;
      c.error.textContent =
        isFilled(day) && !isComplete(day) ? "all starred fields are required for a filled day" : "";
    });
    if (filled.length === 0) {
      status.textContent = "Fill at least one day to submit.";
    } else if (partial.length > 0) {
      status.textContent = `Day ${partial[0]} is incomplete.`;
    } else {
      status.textContent = "";
    }
  };

  const goTo = (day: number) => {
    current = Math.min(Math.max(day, 1), WIZARD_DAYS);
    steps.forEach((step, i) => {
      step.hidden = i + 1 !== current;
    });
    refresh();
  };
  prev.addEventListener("click", () => goTo(current - 1));
  next.addEventListener("click", () => goTo(current + 1));
  container.addEventListener("input", refresh);

  const submit = async (): Promise<void> => {
    const filled = filledDays();
    if (filled.length === 0 || filled.some((day) => !isComplete(day))) return;
    const entries: TravelEntryBody[] = filled.map((day) => ({
      day_index: day,
      ...values(day),
    }));
    submitButton.disabled = true; // no resubmits while in flight
    try {
      const response = await deps.api.submitTravelHistory(deps.caseId, entries);
      result.textContent =
        `Recorded ${response.recorded} day(s); ` +
        `${response.risk_places.length} risk place(s) identified or updated.`;
      deps.onSubmitted?.(response);
    } catch (err) {
      result.textContent = err instanceof Error ? err.message : "submission failed";
    } finally {
      refresh();
    }
  };
  submitButton.addEventListener("click", () => void submit());

  refresh();
  return {
    element: container,
    goTo,
    currentDay: () => current,
    filledDays,
    setDay: (day, vals) => {
      const c = controls[day - 1];
      for (const [name, value] of Object.entries(vals)) {
        c[name as keyof Omit<DayControls, "error">].value = value ?? "";
      }
      refresh();
    },
    submit,
    submitButton,
  };
}
