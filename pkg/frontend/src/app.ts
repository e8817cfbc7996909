import { ApiClient, SessionPayload } from "./api.js";
import { DashboardConfig, readConfig } from "./config.js";
import { formatSl } from "./format.js";
import { LiveTablePoller } from "./liveTable.js";
import { renderMap } from "./mapView.js";
import { buildRegistrationForm } from "./registration.js";
import { buildReturnsView } from "./returns.js";
import { navItemsFor } from "./session.js";
import { renderStaticPage } from "./staticPages.js";
import { renderWorklist } from "./worklist.js";

/** Single-page composition: banner with sign-in and the server-derived
 * "(SL)" clock, role-driven navigation, and one active view at a time.
 * At most one live-table poll is in flight (the poller guards itself). */

export interface App {
  api: ApiClient;
  navigate(item: string): void;
  signIn(officerId: string): Promise<SessionPayload>;
  signOut(): void;
  /** Poll the live table immediately (no-op on other views). */
  refreshHome(): Promise<void>;
  stop(): void;
}

export function startApp(root: HTMLElement, config: DashboardConfig = readConfig()): App {
  const api = new ApiClient(config.apiBase);
  let session: SessionPayload | null = null;
  let clockOffsetMs = 0;
  let poller: LiveTablePoller | null = null;

  root.innerHTML = "";
  const banner = document.createElement("header");
  banner.className = "banner";
  const brand = document.createElement("div");
  brand.className = "brand";
  brand.textContent = "Dengue Surveillance - Live";
  const clock = document.createElement("span");
  clock.className = "sl-clock";
  const who = document.createElement("span");
  who.className = "who";
  const signInBox = document.createElement("span");
  signInBox.className = "sign-in";
  const officerInput = document.createElement("input");
  officerInput.placeholder = "Officer ID (NIC)";
  officerInput.className = "officer-id";
  const signInButton = document.createElement("button");
  signInButton.type = "button";
  signInButton.textContent = "Sign in";
  const signInError = document.createElement("span");
  signInError.className = "sign-in-error";
  signInBox.append(officerInput, signInButton, signInError);
  banner.append(brand, clock, who, signInBox);

  const roleLine = document.createElement("p");
  roleLine.className = "role-line";
  const nav = document.createElement("nav");
  nav.className = "nav";
  const main = document.createElement("main");
  main.className = "view";
  root.append(banner, roleLine, nav, main);

  const clockTimer = setInterval(() => {
    if (session) {
      clock.textContent = `${formatSl(new Date(Date.now() + clockOffsetMs))} (SL)`;
    }
  }, 1000);

  const rebuildNav = () => {
    nav.innerHTML = "";
    for (const item of navItemsFor(session?.officer.role ?? null)) {
      const button = document.createElement("button");
      button.type = "button";
      button.dataset.nav = item;
      button.textContent = item;
      button.addEventListener("click", () => navigate(item));
      nav.appendChild(button);
    }
  };

  const stopPoller = () => {
    poller?.stop();
    poller = null;
  };

  const navigate = (item: string) => {
    stopPoller();
    main.innerHTML = "";
    main.dataset.view = item;
    switch (item) {
      case "Home": {
        poller = new LiveTablePoller(api, main, config.pollIntervalMs);
        poller.start();
        break;
      }
      case "Dengue Map": {
        void api.liveUpdate().then((payload) => renderMap(main, payload));
        break;
      }
      case "Register Case": {
        buildRegistrationForm(main, { api });
        break;
      }
      case "My Area": {
        const rerender = () => void renderWorklist(main, { api, onChanged: rerender });
        rerender();
        break;
      }
      case "Returns": {
        buildReturnsView(main, api);
        break;
      }
      default:
        renderStaticPage(main, item);
    }
  };

  const refreshBanner = () => {
    if (session) {
      signInBox.hidden = true;
      who.innerHTML = "";
      who.append(`Hi, ${session.officer.name} | `);
      const out = document.createElement("a");
      out.href = "#";
      out.textContent = "Sign out";
      out.addEventListener("click", (event) => {
        event.preventDefault();
        signOut();
      });
      who.appendChild(out);
      roleLine.textContent =
        `You are signed in as ${session.officer.role} ` +
        `with the User ID: ${session.officer.officer_id}`;
    } else {
      signInBox.hidden = false;
      who.textContent = "";
      clock.textContent = "";
      roleLine.textContent = "";
    }
    rebuildNav();
  };

  const signIn = async (officerId: string): Promise<SessionPayload> => {
    signInError.textContent = "";
    try {
      session = await api.signIn(officerId.trim());
    } catch {
      signInError.textContent = "Unknown officer id";
      throw new Error("sign-in rejected");
    }
    clockOffsetMs = new Date(session.server_time).getTime() - Date.now();
    clock.textContent = `${formatSl(session.server_time)} (SL)`;
    refreshBanner();
    return session;
  };

  const signOut = () => {
    api.signOut();
    session = null;
    refreshBanner();
    navigate("Home");
  };

  signInButton.addEventListener("click", () => void signIn(officerInput.value).catch(() => {}));

  refreshBanner();
  navigate("Home");

  return {
    api,
    navigate,
    signIn,
    signOut,
    refreshHome: () => poller?.refresh() ?? Promise.resolve(),
    stop: () => {
      stopPoller();
      clearInterval(clockTimer);
    },
  };
}
