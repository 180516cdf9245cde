/** Typed client for the annotation service.
 *
 * The UI never derives annotation state locally: every mutation returns
 * the full updated document payload, which callers render as-is.
 */

import {
  ApiError,
  DocList,
  DocPayload,
  MatrixPayload,
  SchemaLabel,
  SchemaPayload,
} from './types.js';

export interface Api {
  listDocs(): Promise<DocList>;
  getDoc(id: string): Promise<DocPayload>;
  annotate(id: string, start: number, end: number, key: string, version: number): Promise<DocPayload>;
  command(id: string, cmd: string, cursor: number, version: number): Promise<DocPayload>;
  relabel(id: string, pos: number, key: string, version: number): Promise<DocPayload>;
  deleteAt(id: string, pos: number, version: number): Promise<DocPayload>;
  undo(id: string, version: number): Promise<DocPayload>;
  setRecommend(enabled: boolean): Promise<boolean>;
  putSchema(labels: SchemaLabel[]): Promise<SchemaLabel[]>;
  exportDoc(id: string, scheme: string, mode: string): Promise<string>;
  matrix(): Promise<MatrixPayload>;
  report(a: string, b: string, format: string): Promise<string>;
}

type FetchLike = typeof fetch;

export class ApiClient implements Api {
  constructor(
    private readonly baseUrl: string,
    private readonly fetchFn: FetchLike = fetch,
  ) {}

  private async request(path: string, init?: RequestInit): Promise<Response> {
    const response = await this.fetchFn(`${this.baseUrl}${path}`, init);
    if (!response.ok) {
      let code = `HTTP ${response.status}`;
      let message = response.statusText;
      let position: number | undefined;
      try {
        const body = await response.json();
        if (body && typeof body.error === 'string') {
          code = body.error;
          message = body.message ?? message;
          position = typeof body.position === 'number' ? body.position : undefined;
        }
      } catch {
        // non-JSON error body: keep the HTTP status text
      }
      throw new ApiError(response.status, code, message, position);
    }
    return response;
  }

  private async json<T>(path: string, init?: RequestInit): Promise<T> {
    const response = await this.request(path, init);
    return (await response.json()) as T;
  }

  private post<T>(path: string, body: unknown): Promise<T> {
    return this.json<T>(path, {
      method: 'POST',
      headers: { 'Content-Type': 'application/json' },
      body: JSON.stringify(body),
    });
  }

  listDocs(): Promise<DocList> {
    return this.json<DocList>('/docs');
  }

  getDoc(id: string): Promise<DocPayload> {
    return this.json<DocPayload>(`/docs/${encodeURIComponent(id)}`);
  }

  annotate(id: string, start: number, end: number, key: string, version: number): Promise<DocPayload> {
    return this.post(`/docs/${encodeURIComponent(id)}/annotate`, { start, end, key, version });
  }

  command(id: string, cmd: string, cursor: number, version: number): Promise<DocPayload> {
    return this.post(`/docs/${encodeURIComponent(id)}/command`, { cmd, cursor, version });
  }

  relabel(id: string, pos: number, key: string, version: number): Promise<DocPayload> {
    return this.post(`/docs/${encodeURIComponent(id)}/relabel`, { pos, key, version });
  }

  deleteAt(id: string, pos: number, version: number): Promise<DocPayload> {
    return this.post(`/docs/${encodeURIComponent(id)}/delete`, { pos, version });
  }

  undo(id: string, version: number): Promise<DocPayload> {
    return this.post(`/docs/${encodeURIComponent(id)}/undo`, { version });
  }

  async setRecommend(enabled: boolean): Promise<boolean> {
    const body = await this.post<{ enabled: boolean }>('/recommend', { enabled });
    return body.enabled;
  }

  async putSchema(labels: SchemaLabel[]): Promise<SchemaLabel[]> {
    const body = await this.json<SchemaPayload>('/schema', {
      method: 'PUT',
      headers: { 'Content-Type': 'application/json' },
      body: JSON.stringify({ labels }),
    });
    return body.labels;
  }

  async exportDoc(id: string, scheme: string, mode: string): Promise<string> {
    const response = await this.request(
      `/docs/${encodeURIComponent(id)}/export?scheme=${scheme}&mode=${mode}`,
    );
    return response.text();
  }

  matrix(): Promise<MatrixPayload> {
    return this.json<MatrixPayload>('/admin/matrix');
  }

  async report(a: string, b: string, format: string): Promise<string> {
    const query = `a=${encodeURIComponent(a)}&b=${encodeURIComponent(b)}&format=${format}`;
    const response = await this.request(`/admin/report?${query}`);
    return response.text();
  }
}
