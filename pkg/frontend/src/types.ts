/** Wire types mirroring the annotation service payloads. */

export type Origin = 'human' | 'recommended';

export interface Span {
  start: number; // code point offset, inclusive
  end: number;   // code point offset, exclusive
  label: string;
  origin: Origin;
}

export interface DocPayload {
  id: string;
  text: string;
  spans: Span[];
  suggestions: Span[];
  version: number;
}

export interface DocListEntry {
  id: string;
  version: number;
}

export interface DocList {
  documents: DocListEntry[];
  errors: Record<string, string>;
  schema: SchemaPayload;
  recommend: boolean;
}

export interface SchemaLabel {
  key: string;
  name: string;
}

export interface SchemaPayload {
  labels: SchemaLabel[];
}

export interface MatrixPayload {
  annotators: string[];
  full_f1: number[][];
  boundary_f1: number[][];
}

/** Domain error relayed by the service (4xx with a JSON body). */
export class ApiError extends Error {
  constructor(
    readonly status: number,
    readonly code: string,
    message: string,
    readonly position?: number,
  ) {
    super(message);
  }
}
