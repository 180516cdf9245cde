/** Mapping the browser selection inside the working area to document
 * offsets (code points), independent of how the text is split across
 * nodes by span rendering.
 */

import { utf16ToCp } from './offsets.js';

export interface SelectionRange {
  start: number;
  end: number;
}

/** UTF-16 offset of (node, offsetInNode) from the start of container. */
function domPointToUtf16(container: HTMLElement, node: Node, offset: number): number | null {
  let total = 0;
  const walker = document.createTreeWalker(container, NodeFilter.SHOW_TEXT);
  let current = walker.nextNode();
  while (current !== null) {
    if (current === node) {
      return total + offset;
    }
    total += (current.textContent ?? '').length;
    current = walker.nextNode();
  }
  // the point may be the container itself (offset counts child nodes)
  if (node === container) {
    let sum = 0;
    for (let i = 0; i < offset && i < container.childNodes.length; i++) {
      sum += (container.childNodes[i].textContent ?? '').length;
    }
    return sum;
  }
  return null;
}

/** Current selection as code point offsets into ``text``, if it lies
 * inside ``container``. Collapsed selections yield start === end. */
export function selectionOffsets(
  container: HTMLElement,
  text: string,
  selection: Selection | null = null,
): SelectionRange | null {
  const sel = selection ?? window.getSelection();
  if (!sel || sel.rangeCount === 0) return null;
  const range = sel.getRangeAt(0);
  if (!container.contains(range.startContainer) || !container.contains(range.endContainer)) {
    return null;
  }
  const startUtf16 = domPointToUtf16(container, range.startContainer, range.startOffset);
  const endUtf16 = domPointToUtf16(container, range.endContainer, range.endOffset);
  if (startUtf16 === null || endUtf16 === null) return null;
  const start = utf16ToCp(text, Math.min(startUtf16, endUtf16));
  const end = utf16ToCp(text, Math.max(startUtf16, endUtf16));
  return { start, end };
}
