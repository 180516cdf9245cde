/** Annotator view: keyboard-first span labeling over the service API.
 *
 * Interaction model:
 *   - select text with the mouse, press a bound key -> annotate
 *   - place the caret inside a span, press a bound key -> relabel
 *   - press `q` inside a span -> delete (vetoes a suggestion)
 *   - Ctrl+Z / Cmd+Z -> undo
 *   - the command entry runs batch commands like `2A3D2B` at the caret
 *
 * The server is the single source of truth: every mutation response
 * carries the full document, which replaces the rendered state. A 409
 * (stale version or overlap) refetches and asks the user to retry.
 */

import { Api } from './api.js';
import { renderDocument } from './render.js';
import { selectionOffsets, SelectionRange } from './selection.js';
import { ApiError, DocPayload, SchemaLabel } from './types.js';

const DELETE_KEY = 'q';

export class AnnotatorApp {
  payload: DocPayload;
  schema: SchemaLabel[];
  recommendEnabled: boolean;
  lastSelection: SelectionRange | null = null;

  readonly textArea: HTMLElement;
  readonly commandInput: HTMLInputElement;
  readonly commandError: HTMLElement;
  readonly statusLine: HTMLElement;
  readonly noticeLine: HTMLElement;
  readonly shortcutPanel: HTMLElement;
  readonly remapButton: HTMLButtonElement;
  readonly rmOnButton: HTMLButtonElement;
  readonly rmOffButton: HTMLButtonElement;
  readonly undoButton: HTMLButtonElement;

  private constructor(
    readonly root: HTMLElement,
    readonly api: Api,
    payload: DocPayload,
    schema: SchemaLabel[],
    recommendEnabled: boolean,
  ) {
    this.payload = payload;
    this.schema = schema;
    this.recommendEnabled = recommendEnabled;

    root.innerHTML = `
      <div class="workbench">
        <div class="main">
          <div class="text-area" tabindex="0"></div>
          <div class="controls">
            <button class="rm-on">RM on</button>
            <button class="rm-off">RM off</button>
            <button class="undo-btn">Undo</button>
          </div>
          <div class="status-line"></div>
          <div class="notice-line"></div>
          <div class="command-row">
            <input class="command-input" placeholder="command, e.g. 2A3D2B" />
            <button class="command-run">Run</button>
          </div>
          <div class="command-error"></div>
        </div>
        <div class="sidebar">
          <h3>Shortcuts</h3>
          <table class="shortcut-panel"></table>
          <button class="remap-btn">ReMap</button>
        </div>
      </div>`;

    this.textArea = this.query('.text-area');
    this.commandInput = this.query('.command-input');
    this.commandError = this.query('.command-error');
    this.statusLine = this.query('.status-line');
    this.noticeLine = this.query('.notice-line');
    this.shortcutPanel = this.query('.shortcut-panel');
    this.remapButton = this.query('.remap-btn');
    this.rmOnButton = this.query('.rm-on');
    this.rmOffButton = this.query('.rm-off');
    this.undoButton = this.query('.undo-btn');

    this.textArea.addEventListener('mouseup', () => this.captureSelection());
    this.textArea.addEventListener('keyup', () => this.captureSelection());
    document.addEventListener('keydown', (event) => {
      void this.handleKeydown(event);
    });
    this.query<HTMLButtonElement>('.command-run').addEventListener('click', () => {
      void this.submitCommand();
    });
    this.commandInput.addEventListener('keydown', (event) => {
      if (event.key === 'Enter') void this.submitCommand();
    });
    this.remapButton.addEventListener('click', () => {
      void this.remap();
    });
    this.rmOnButton.addEventListener('click', () => void this.setRecommend(true));
    this.rmOffButton.addEventListener('click', () => void this.setRecommend(false));
    this.undoButton.addEventListener('click', () => void this.undo());

    this.renderShortcutPanel();
    this.refresh(payload);
  }

  static async create(root: HTMLElement, api: Api, docId: string): Promise<AnnotatorApp> {
    const listing = await api.listDocs();
    const payload = await api.getDoc(docId);
    return new AnnotatorApp(root, api, payload, listing.schema.labels, listing.recommend);
  }

  private query<T extends HTMLElement = HTMLElement>(selector: string): T {
    const el = this.root.querySelector(selector);
    if (!el) throw new Error(`missing element ${selector}`);
    return el as T;
  }

  /** Replace all rendered state from a fresh server payload. */
  refresh(payload: DocPayload): void {
    this.payload = payload;
    renderDocument(this.textArea, payload);
    this.updateStatus();
  }

  private updateStatus(): void {
    const cursor = this.lastSelection ? this.lastSelection.start : 0;
    const rm = this.recommendEnabled ? 'on' : 'off';
    this.statusLine.textContent =
      `doc ${this.payload.id} | v${this.payload.version} | cursor ${cursor} | recommend ${rm}`;
  }

  notice(message: string): void {
    this.noticeLine.textContent = message;
  }

  captureSelection(): SelectionRange | null {
    const range = selectionOffsets(this.textArea, this.payload.text);
    if (range !== null) this.lastSelection = range;
    this.updateStatus();
    return range;
  }

  private labelForKey(key: string): SchemaLabel | undefined {
    const folded = key.toLowerCase();
    return this.schema.find((row) => row.key.toLowerCase() === folded);
  }

  async handleKeydown(event: KeyboardEvent): Promise<void> {
    const target = event.target as HTMLElement | null;
    if (
      target &&
      (target instanceof HTMLInputElement ||
        target instanceof HTMLTextAreaElement ||
        target.isContentEditable)
    ) {
      return;
    }
    if ((event.ctrlKey || event.metaKey) && event.key.toLowerCase() === 'z') {
      event.preventDefault();
      await this.undo();
      return;
    }
    if (event.ctrlKey || event.metaKey || event.altKey) return;
    const key = event.key;
    if (key.length !== 1 || !/[a-zA-Z]/.test(key)) return;

    const selection = this.captureSelection() ?? this.lastSelection;
    if (key.toLowerCase() === DELETE_KEY) {
      event.preventDefault();
      if (selection === null) {
        this.notice('place the cursor inside a span to delete it');
        return;
      }
      await this.mutate(() =>
        this.api.deleteAt(this.payload.id, selection.start, this.payload.version),
      );
      return;
    }

    const bound = this.labelForKey(key);
    if (!bound) {
      this.notice(`no label bound to key '${key}'`);
      return;
    }
    if (selection === null) {
      this.notice('select text or place the cursor inside a span first');
      return;
    }
    event.preventDefault();
    if (selection.start < selection.end) {
      await this.mutate(() =>
        this.api.annotate(
          this.payload.id, selection.start, selection.end, key, this.payload.version,
        ),
      );
    } else {
      await this.mutate(() =>
        this.api.relabel(this.payload.id, selection.start, key, this.payload.version),
      );
    }
  }

  async undo(): Promise<void> {
    await this.mutate(() => this.api.undo(this.payload.id, this.payload.version));
  }

  async submitCommand(): Promise<void> {
    const cmd = this.commandInput.value.trim();
    this.commandError.textContent = '';
    if (!cmd) return;
    const cursor = this.lastSelection ? this.lastSelection.start : 0;
    const ok = await this.mutate(
      () => this.api.command(this.payload.id, cmd, cursor, this.payload.version),
      (error) => {
        if (error.code === 'SyntaxError' && error.position !== undefined) {
          const marker = `${cmd.slice(0, error.position)}>>${cmd.slice(error.position)}`;
          this.commandError.textContent = `${error.message}: ${marker}`;
          return true;
        }
        return false;
      },
    );
    if (ok) this.commandInput.value = '';
  }

  async setRecommend(enabled: boolean): Promise<void> {
    try {
      this.recommendEnabled = await this.api.setRecommend(enabled);
      this.refresh(await this.api.getDoc(this.payload.id));
    } catch (error) {
      this.handleError(error);
    }
  }

  renderShortcutPanel(): void {
    this.shortcutPanel.innerHTML = '';
    for (const row of this.schema) {
      const tr = document.createElement('tr');
      const keyCell = document.createElement('td');
      keyCell.className = 'shortcut-key';
      keyCell.textContent = row.key;
      const labelCell = document.createElement('td');
      const input = document.createElement('input');
      input.className = 'shortcut-label';
      input.dataset.key = row.key;
      input.value = row.name;
      labelCell.appendChild(input);
      tr.append(keyCell, labelCell);
      this.shortcutPanel.appendChild(tr);
    }
  }

  /** Push the edited shortcut map; the panel mirrors the server's ack. */
  async remap(): Promise<void> {
    const inputs = Array.from(
      this.shortcutPanel.querySelectorAll<HTMLInputElement>('input.shortcut-label'),
    );
    const labels = inputs.map((input) => ({
      key: input.dataset.key ?? '',
      name: input.value.trim(),
    }));
    try {
      this.schema = await this.api.putSchema(labels);
      this.renderShortcutPanel();
      this.notice('shortcut map updated');
    } catch (error) {
      this.handleError(error);
    }
  }

  /** Run one mutation; on success render the response payload.
   * ``intercept`` may claim an ApiError (returning true) before the
   * generic handling. Returns whether the mutation succeeded. */
  private async mutate(
    call: () => Promise<DocPayload>,
    intercept?: (error: ApiError) => boolean,
  ): Promise<boolean> {
    try {
      const payload = await call();
      this.refresh(payload);
      this.notice('');
      return true;
    } catch (error) {
      if (error instanceof ApiError && intercept && intercept(error)) return false;
      await this.handleError(error);
      return false;
    }
  }

  private async handleError(error: unknown): Promise<void> {
    if (error instanceof ApiError) {
      if (error.code === 'StaleVersion') {
        this.refresh(await this.api.getDoc(this.payload.id));
        this.notice('document changed elsewhere; state refreshed, please retry');
        return;
      }
      this.notice(`${error.code}: ${error.message}`);
      return;
    }
    this.notice(String(error));
  }
}
