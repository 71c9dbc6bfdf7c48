/** Hash routes: #/concept/<uuid>, #/build, #/user/<name>, and home. */

export type Route =
  | { view: "home" }
  | { view: "concept"; id: string }
  | { view: "build" }
  | { view: "user"; name: string };

export function parseRoute(hash: string): Route {
  const path = hash.replace(/^#\/?/, "");
  if (path === "" || path === "/") {
    return { view: "home" };
  }
  const parts = path.split("/").map(decodeURIComponent);
  if (parts[0] === "concept" && parts[1]) {
    return { view: "concept", id: parts[1] };
  }
  if (parts[0] === "build") {
    return { view: "build" };
  }
  if (parts[0] === "user" && parts[1]) {
    return { view: "user", name: parts[1] };
  }
  return { view: "home" };
}

export function conceptHref(id: string): string {
  return `#/concept/${encodeURIComponent(id)}`;
}

export function userHref(name: string): string {
  return `#/user/${encodeURIComponent(name)}`;
}

export function onRouteChange(handler: (route: Route) => void): void {
  window.addEventListener("hashchange", () => handler(parseRoute(location.hash)));
  handler(parseRoute(location.hash));
}
