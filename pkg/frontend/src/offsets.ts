/** Unicode offset conversions.
 *
 * The service counts offsets in code points; JavaScript strings and DOM
 * APIs count UTF-16 code units. Astral characters (emoji, rare CJK)
 * occupy two units, so the two indexings drift apart and every offset
 * crossing the API boundary goes through these converters.
 */

export function codePointLength(text: string): number {
  let count = 0;
  for (const _ of text) count += 1;
  return count;
}

/** UTF-16 index of the ``cpIndex``-th code point (clamped to end). */
export function cpToUtf16(text: string, cpIndex: number): number {
  if (cpIndex <= 0) return 0;
  let cp = 0;
  let utf16 = 0;
  for (const ch of text) {
    if (cp === cpIndex) return utf16;
    cp += 1;
    utf16 += ch.length;
  }
  return text.length;
}

/** Code point index for a UTF-16 index (must not split a surrogate pair). */
export function utf16ToCp(text: string, utf16Index: number): number {
  if (utf16Index <= 0) return 0;
  let cp = 0;
  let utf16 = 0;
  for (const ch of text) {
    if (utf16 >= utf16Index) return cp;
    cp += 1;
    utf16 += ch.length;
  }
  return cp;
}

/** Slice by code point offsets. */
export function cpSlice(text: string, startCp: number, endCp: number): string {
  return text.slice(cpToUtf16(text, startCp), cpToUtf16(text, endCp));
}
