/* Shared test scaffolding: a synthetic DOM window and tiny wait
 * utilities. Panes only touch standard DOM surface, so the happy-dom
 * document stands in for a browser without any environment patching. */

import { Window } from "happy-dom";

export interface Dom {
  window: Window;
  document: Document;
  root: HTMLElement;
}

export function dom(): Dom {
  const window = new Window({ url: "http://localhost/" });
  const document = window.document as unknown as Document;
  const root = document.createElement("div");
  document.body.appendChild(root);
  return { window, document, root };
}

export function sleep(ms: number): Promise<void> {
  return new Promise((resolve) => setTimeout(resolve, ms));
}

export async function until(check: () => boolean, timeoutMs = 5000): Promise<void> {
  const deadline = Date.now() + timeoutMs;
  while (!check()) {
    if (Date.now() > deadline) throw new Error("condition not met in time");
    await sleep(25);
  }
}

export function click(element: Element | null): void {
  if (!element) throw new Error("expected an element to click");
  (element as HTMLElement).click();
}

export function textOf(element: Element | null): string {
  if (!element) throw new Error("expected an element");
  return element.textContent ?? "";
}
