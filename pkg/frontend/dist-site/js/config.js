const DEFAULT_POLL_MS = 15000;
/** Runtime configuration: a host page may set window.DW_CONFIG. */
export function readConfig() {
    const overrides = globalThis.DW_CONFIG ?? {};
    return {
        apiBase: overrides.apiBase ?? "",
        pollIntervalMs: overrides.pollIntervalMs ?? DEFAULT_POLL_MS,
    };
}
