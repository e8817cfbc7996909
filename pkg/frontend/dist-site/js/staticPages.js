/** Informational pages on the public navigation. Placeholder copy: the
 * operational content is owned by the health authority, not the system. */
export const STATIC_PAGES = {
    Feature: {
        title: "What this service does",
        body: "Hospitals notify suspected dengue cases electronically; each case is " +
            "routed instantly to the responsible field health officer, patient " +
            "travel histories reveal potential breeding sites, and the live table " +
            "above updates in real time. Weekly returns are generated " +
            "automatically for every MOH area.",
    },
    "Fever Symptoms": {
        title: "Dengue fever symptoms",
        body: "Placeholder content. High fever, severe headache, pain behind the " +
            "eyes, muscle and joint pains, rash. Seek medical care early; " +
            "warning signs of severe dengue need immediate attention.",
    },
    "Case Management": {
        title: "Case management",
        body: "Placeholder content. Clinical management guidance is published by " +
            "the national health authorities; this page links deployments to " +
            "their local guidelines.",
    },
    Prevention: {
        title: "Prevention",
        body: "Placeholder content. Remove standing water, cover stored water, and " +
            "report suspected breeding sites to your local public health " +
            "inspector.",
    },
};
export function renderStaticPage(root, name) {
    const page = STATIC_PAGES[name];
    root.innerHTML = "";
    const heading = document.createElement("h2");
    heading.textContent = page ? page.title : name;
    const body = document.createElement("p");
    body.textContent = page ? page.body : "";
    root.append(heading, body);
}
