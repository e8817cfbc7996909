export interface DashboardConfig {
  /** API base URL; empty string means same origin. */
  apiBase: string;
  pollIntervalMs: number;
}

const DEFAULT_POLL_MS = 15000;

/** Runtime configuration: a host page may set window.DW_CONFIG. */
export function readConfig(): DashboardConfig {
  const overrides = (globalThis as { DW_CONFIG?: Partial<DashboardConfig> }).DW_CONFIG ?? {};
  return {
    apiBase: overrides.apiBase ?? "",
    pollIntervalMs: overrides.pollIntervalMs ?? DEFAULT_POLL_MS,
  };
}
