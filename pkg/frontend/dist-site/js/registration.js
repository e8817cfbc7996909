import { ApiError } from "./api.js";
import { attachSuggest } from "./suggest.js";
const REQUIRED_FIELDS = [
    "opd_no",
    "ward_no",
    "ward_ticket_no",
    "title",
    "first_name",
    "last_name",
    "age_value",
    "gender",
    "door_no",
    "street",
    "land_type",
    "gn_division",
];
const MOBILE_RE = /^\d{9,10}$/;
export function buildRegistrationForm(root, deps) {
    root.innerHTML = "";
    const heading = document.createElement("h2");
    heading.textContent = "New Dengue Patient Registration";
    root.appendChild(heading);
    const form = document.createElement("form");
    form.className = "registration-form";
    form.noValidate = true;
    const field = (name, label, kind = "text", options = [], required = REQUIRED_FIELDS.includes(name)) => {
        const wrap = document.createElement("label");
        wrap.className = "field";
        wrap.textContent = `${label}${required ? "*" : ""} `;
        let control;
        if (kind === "select") {
            control = document.createElement("select");
            for (const option of options) {
                const el = document.createElement("option");
                el.value = option;
                el.textContent = option;
                control.appendChild(el);
            }
        }
        else {
            control = document.createElement("input");
            control.type = kind;
        }
        control.name = name;
        wrap.appendChild(control);
        const error = document.createElement("span");
        error.className = "field-error";
        error.dataset.field = name;
        wrap.appendChild(error);
        form.appendChild(wrap);
        return control;
    };
    field("opd_no", "OPD No");
    field("ward_no", "Ward No");
    field("ward_ticket_no", "Ward Ticket No");
    const title = field("title", "Title", "select", [""]);
    field("first_name", "First Name");
    field("last_name", "Last Name");
    const ageValue = field("age_value", "Age", "number");
    field("age_unit", "Age Unit", "select", ["years", "months"]);
    field("gender", "Gender", "select", ["", "female", "male"]);
    field("door_no", "Door No");
    const street = field("street", "Street Name");
    const landType = field("land_type", "Land Type", "select", [""]);
    const gn = field("gn_division", "GN Division Name");
    field("district_hint", "Health District (when the GN name is ambiguous)", "text", [], false);
    field("mobile", "Mobile", "text", [], false);
    const employment = field("employment", "Employment", "text", [], false);
    field("clinical_class", "Clinical Class", "select", ["", "DF", "DHF", "unspecified"], false);
    const submit = document.createElement("button");
    submit.type = "submit";
    submit.textContent = "Register";
    submit.disabled = true;
    form.appendChild(submit);
    const status = document.createElement("p");
    status.className = "form-status";
    form.appendChild(status);
    // predefined tokens from the service keep typing errors out
    void populateSelect(deps.api, title, "titles");
    void populateSelect(deps.api, landType, "land_types");
    const suggestOf = (source) => (prefix) => deps.api.suggest(source, prefix).then((r) => r.tokens);
    attachSuggest(gn, suggestOf("gn_divisions"), {
        debounceMs: deps.suggestDebounceMs,
    });
    attachSuggest(street, suggestOf("streets"), {
        debounceMs: deps.suggestDebounceMs,
    });
    attachSuggest(employment, suggestOf("employment"), {
        debounceMs: deps.suggestDebounceMs,
    });
    const value = (name) => form.elements.namedItem(name).value.trim();
    const clientValid = () => {
        for (const name of REQUIRED_FIELDS) {
            if (!value(name))
                return false;
        }
        const mobile = value("mobile");
        if (mobile && !MOBILE_RE.test(mobile))
            return false;
        return true;
    };
    const refresh = () => {
        submit.disabled = !clientValid();
        const mobile = value("mobile");
        setFieldError(form, "mobile", mobile && !MOBILE_RE.test(mobile) ? "must be 9 or 10 digits" : "");
    };
    form.addEventListener("input", refresh);
    form.addEventListener("change", refresh);
    form.addEventListener("submit", (event) => {
        event.preventDefault();
        if (!clientValid())
            return;
        clearFieldErrors(form);
        status.textContent = "";
        const body = {
            opd_no: value("opd_no"),
            ward_no: value("ward_no"),
            ward_ticket_no: value("ward_ticket_no"),
            title: value("title"),
            first_name: value("first_name"),
            last_name: value("last_name"),
            age: { value: Number(ageValue.value), unit: value("age_unit") },
            gender: value("gender"),
            residence: {
                door_no: value("door_no"),
                street: value("street"),
                land_type: value("land_type"),
                gn_division: value("gn_division"),
                district_hint: value("district_hint") || null,
            },
            mobile: value("mobile") || null,
            employment: value("employment") || null,
            clinical_class: value("clinical_class") || null,
        };
        submit.disabled = true;
        void deps.api
            .registerCase(body)
            .then((response) => {
            status.textContent = `Registered case ${response.case.case_id} (${response.case.path.phi_area}, ${response.case.path.district})`;
            form.reset();
            deps.onRegistered?.(response.case);
        })
            .catch((err) => {
            if (err instanceof ApiError && err.payload.error === "ValidationError") {
                setFieldError(form, err.payload.field ?? "", err.payload.reason ?? "invalid");
                status.textContent = "";
            }
            else {
                status.textContent = err instanceof Error ? err.message : "registration failed";
            }
        })
            .finally(refresh);
    });
    root.appendChild(form);
    return form;
}
async function populateSelect(api, select, source) {
    try {
        const { tokens } = await api.suggest(source, "", 50);
        for (const token of tokens) {
            const option = document.createElement("option");
            option.value = token;
            option.textContent = token;
            select.appendChild(option);
        }
    }
    catch {
        // select stays empty; server-side validation still guards the field
    }
}
export function setFieldError(form, field, message) {
    // server field names map onto the flat form names directly
    const target = form.querySelector(`.field-error[data-field="${field}"]`);
    if (target)
        target.textContent = message;
}
function clearFieldErrors(form) {
    for (const el of form.querySelectorAll(".field-error")) {
        el.textContent = "";
    }
}
