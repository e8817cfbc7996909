/** Autocomplete dropdown fed by the service suggestion endpoint. */
export function attachSuggest(input, fetcher, options = {}) {
    const debounceMs = options.debounceMs ?? 150;
    const list = document.createElement("ul");
    list.className = "suggest-list";
    list.hidden = true;
    input.insertAdjacentElement("afterend", list);
    let timer = null;
    let generation = 0;
    const show = (tokens) => {
        list.innerHTML = "";
        list.hidden = tokens.length === 0;
        for (const token of tokens) {
            const item = document.createElement("li");
            item.textContent = token;
            item.addEventListener("mousedown", (event) => {
                event.preventDefault();
                input.value = token;
                list.hidden = true;
                input.dispatchEvent(new Event("change", { bubbles: true }));
            });
            list.appendChild(item);
        }
    };
    const onInput = () => {
        if (timer !== null)
            clearTimeout(timer);
        const mine = ++generation;
        timer = setTimeout(async () => {
            try {
                const tokens = await fetcher(input.value);
                if (mine === generation)
                    show(tokens);
            }
            catch {
                if (mine === generation)
                    show([]);
            }
        }, debounceMs);
    };
    const onBlur = () => {
        setTimeout(() => {
            list.hidden = true;
        }, 100);
    };
    input.addEventListener("input", onInput);
    input.addEventListener("blur", onBlur);
    return () => {
        input.removeEventListener("input", onInput);
        input.removeEventListener("blur", onBlur);
        list.remove();
    };
}
