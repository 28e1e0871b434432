/* Element construction helpers. Panes receive a container element and
 * build everything through its ownerDocument, so the same code runs in a
 * real browser and under a synthetic DOM in tests. */

export type Child = Node | string;

export interface Attrs {
  [key: string]: string | boolean | EventListener | undefined;
}

export function el(
  doc: Document,
  tag: string,
  attrs: Attrs = {},
  children: Child[] = [],
): HTMLElement {
  const node = doc.createElement(tag);
  for (const [key, value] of Object.entries(attrs)) {
    if (value === undefined) continue;
    if (key.startsWith("on") && typeof value === "function") {
      node.addEventListener(key.slice(2), value);
    } else if (typeof value === "boolean") {
      // disabled, checked and friends work as properties, not attributes
      (node as unknown as Record<string, boolean>)[key] = value;
    } else if (typeof value === "string") {
      node.setAttribute(key, value);
    }
  }
  for (const child of children) {
    node.appendChild(typeof child === "string" ? doc.createTextNode(child) : child);
  }
  return node;
}

export function clear(node: Element): void {
  while (node.firstChild) node.removeChild(node.firstChild);
}

/** Transient error surface; stays in the DOM long enough for a person
 * (or an assertion) to read it. */
export function toast(root: HTMLElement, message: string): void {
  const doc = root.ownerDocument;
  const note = el(doc, "div", { class: "toast", role: "alert" }, [message]);
  root.appendChild(note);
  setTimeout(() => {
    if (note.parentNode) note.parentNode.removeChild(note);
  }, 4000);
}
