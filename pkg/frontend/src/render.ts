/** Working-area rendering: document text with colored span regions.
 *
 * Human spans render blue, suggestions green; the active text selection
 * is left to the browser and styled orange via CSS. The DOM is rebuilt
 * from the latest server payload on every refresh, so what is on screen
 * is always exactly the server's state.
 */

import { cpSlice } from './offsets.js';
import { DocPayload, Span } from './types.js';

export interface RenderedRegion {
  start: number;
  end: number;
  origin: 'human' | 'recommended';
  label: string;
}

interface Segment {
  start: number;
  end: number;
  span: Span | null;
}

function segments(payload: DocPayload): Segment[] {
  const marked = [...payload.spans, ...payload.suggestions].sort(
    (a, b) => a.start - b.start,
  );
  const out: Segment[] = [];
  let pos = 0;
  const total = codePoints(payload.text);
  for (const span of marked) {
    if (pos < span.start) out.push({ start: pos, end: span.start, span: null });
    out.push({ start: span.start, end: span.end, span });
    pos = span.end;
  }
  if (pos < total) out.push({ start: pos, end: total, span: null });
  return out;
}

function codePoints(text: string): number {
  let n = 0;
  for (const _ of text) n += 1;
  return n;
}

export function renderDocument(container: HTMLElement, payload: DocPayload): RenderedRegion[] {
  container.textContent = '';
  const regions: RenderedRegion[] = [];
  for (const seg of segments(payload)) {
    const textPiece = cpSlice(payload.text, seg.start, seg.end);
    if (seg.span === null) {
      container.appendChild(document.createTextNode(textPiece));
      continue;
    }
    const el = document.createElement('span');
    el.className = seg.span.origin === 'human' ? 'span-human' : 'span-suggestion';
    el.dataset.start = String(seg.start);
    el.dataset.end = String(seg.end);
    el.dataset.label = seg.span.label;
    el.title = seg.span.label;
    el.textContent = textPiece;
    container.appendChild(el);
    regions.push({
      start: seg.start,
      end: seg.end,
      origin: seg.span.origin,
      label: seg.span.label,
    });
  }
  return regions;
}
