/** Role-driven navigation: the public sees only the live table and the
 * informational pages; signed-in roles add exactly their work page. The
 * gating here is cosmetic - the server re-enforces every role check. */

export const PUBLIC_NAV = [
  "Home",
  "Dengue Map",
  "Feature",
  "Fever Symptoms",
  "Case Management",
  "Prevention",
] as const;

export type NavItem = string;

export function navItemsFor(role: string | null): NavItem[] {
  const items: NavItem[] = [...PUBLIC_NAV];
  if (role === "ICN") items.push("Register Case");
  if (role === "PHI") items.push("My Area");
  if (role === "MOH" || role === "RE" || role === "EPID") items.push("Returns");
  return items;
}
