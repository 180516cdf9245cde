/** End-to-end: the UI drives the real annotation service.
 *
 * Spawns `spanbench serve` on a scratch project and exercises the same
 * DOM flows as the unit tests, but over live HTTP: annotate by
 * select-and-press, watch the on-disk .ann file change, veto a live
 * suggestion, run a batch command, and remap the shortcut schema.
 */

import { spawn, ChildProcess } from 'node:child_process';
import { mkdtempSync, readFileSync, rmSync, writeFileSync } from 'node:fs';
import { tmpdir } from 'node:os';
import { join } from 'node:path';
import { afterAll, beforeAll, describe, expect, it } from 'vitest';

import { ApiClient } from '../src/api.js';
import { AnnotatorApp } from '../src/app.js';
import { renderReportMarkdown } from '../src/admin.js';
import { pressKey, selectCp } from './domHelpers.js';

const PORT = 8912 + (process.pid % 47);
const BASE = `http://127.0.0.1:${PORT}`;
const TEXT = 'New York is big and New York is old';

const realFetch: typeof fetch = (...args) => fetch(...args);

let projectDir: string;
let server: ChildProcess | undefined;

async function waitForService(): Promise<void> {
  const deadline = Date.now() + 25000;
  while (Date.now() < deadline) {
    try {
      const response = await realFetch(`${BASE}/docs`);
      if (response.ok) return;
    } catch {
      // not up yet
    }
    await new Promise((resolve) => setTimeout(resolve, 200));
  }
  throw new Error('annotation service did not come up');
}

beforeAll(async () => {
  projectDir = mkdtempSync(join(tmpdir(), 'spanbench-ui-'));
  const config = {
    schema: {
      labels: [
        { key: 'a', name: 'Location' },
        { key: 'b', name: 'Organization' },
        { key: 'c', name: 'Person' },
        { key: 'd', name: 'Misc' },
      ],
    },
    settings: { recommend: true },
    lexicon: 'lexicon.tsv',
  };
  writeFileSync(join(projectDir, 'project.json'), JSON.stringify(config));
  for (const name of ['note.alice', 'note.bob', 'note.carol']) {
    writeFileSync(join(projectDir, `${name}.ann`), TEXT);
  }
  server = spawn(
    'python3',
    ['-m', 'spanbench.cli', 'serve', '--project', projectDir, '--port', String(PORT)],
    { stdio: 'ignore' },
  );
  await waitForService();
});

afterAll(() => {
  server?.kill();
  rmSync(projectDir, { recursive: true, force: true });
});

async function makeApp(docId: string): Promise<AnnotatorApp> {
  document.body.innerHTML = '<div id="root"></div>';
  const api = new ApiClient(BASE, realFetch);
  return AnnotatorApp.create(document.getElementById('root')!, api, docId);
}

describe('UI against the live service', () => {
  it('select and press annotates, updates the file, and suggests the recurrence', async () => {
    const app = await makeApp('note.alice');
    expect(app.payload.text).toBe(TEXT);

    selectCp(app.textArea, app.payload.text, 0, 8);
    await app.handleKeydown(pressKey('a'));

    const blues = app.textArea.querySelectorAll('.span-human');
    expect(blues.length).toBe(1);
    expect(blues[0].textContent).toBe('New York');

    // the annotated file updated on disk
    const onDisk = readFileSync(join(projectDir, 'note.alice.ann'), 'utf-8');
    expect(onDisk).toBe('[@New York#Location*] is big and New York is old');

    // the recurring surface came back as a green suggestion
    const greens = app.textArea.querySelectorAll('.span-suggestion');
    expect(greens.length).toBe(1);
    expect(greens[0].textContent).toBe('New York');
    expect(greens[0].getAttribute('data-start')).toBe('20');
  });

  it('q on a green span vetoes it for the rest of the pass', async () => {
    const app = await makeApp('note.alice');
    expect(app.textArea.querySelectorAll('.span-suggestion').length).toBe(1);

    selectCp(app.textArea, app.payload.text, 22, 22);
    await app.handleKeydown(pressKey('q'));
    expect(app.textArea.querySelectorAll('.span-suggestion').length).toBe(0);

    const refetched = await new ApiClient(BASE, realFetch).getDoc('note.alice');
    expect(refetched.suggestions).toEqual([]);
  });

  it('entering 2A3D2B yields three spans', async () => {
    const app = await makeApp('note.bob');
    selectCp(app.textArea, app.payload.text, 0, 0);
    app.commandInput.value = '2A3D2B';
    await app.submitCommand();

    const regions = app.textArea.querySelectorAll('.span-human');
    expect(regions.length).toBe(3);
    expect([...regions].map((r) => r.getAttribute('data-label'))).toEqual([
      'Location',
      'Misc',
      'Organization',
    ]);
    const onDisk = readFileSync(join(projectDir, 'note.bob.ann'), 'utf-8');
    expect(onDisk).toBe('[@Ne#Location*][@w Y#Misc*][@or#Organization*]k is big and New York is old');
  });

  it('a command syntax error reports its position inline', async () => {
    const app = await makeApp('note.carol');
    app.commandInput.value = '2A3';
    await app.submitCommand();
    expect(app.commandError.textContent).toContain('2A>>3');
  });

  it('undo via Ctrl+Z rolls the document back', async () => {
    const app = await makeApp('note.carol');
    selectCp(app.textArea, app.payload.text, 12, 15);
    await app.handleKeydown(pressKey('b'));
    expect(app.textArea.querySelectorAll('.span-human').length).toBe(1);

    await app.handleKeydown(pressKey('z', { ctrl: true }));
    expect(app.textArea.querySelectorAll('.span-human').length).toBe(0);
    const onDisk = readFileSync(join(projectDir, 'note.carol.ann'), 'utf-8');
    expect(onDisk).toBe(TEXT);
  });

  it('remap is reflected in the shortcut panel after the server ack', async () => {
    const app = await makeApp('note.carol');
    // "Person" is bound to `c` and unused by any annotation, so renaming it is legal
    const input = app.shortcutPanel.querySelector<HTMLInputElement>('input[data-key="c"]')!;
    expect(input.value).toBe('Person');
    input.value = 'Profession';
    await app.remap();

    const refreshed = app.shortcutPanel.querySelector<HTMLInputElement>('input[data-key="c"]')!;
    expect(refreshed.value).toBe('Profession');

    // the new binding is live for the next annotation
    selectCp(app.textArea, app.payload.text, 12, 15);
    await app.handleKeydown(pressKey('c'));
    expect(app.textArea.querySelector('.span-human')!.getAttribute('data-label')).toBe(
      'Profession',
    );
  });

  it('admin views render the live matrix and the color-coded report', async () => {
    const api = new ApiClient(BASE, realFetch);
    const matrix = await api.matrix();
    expect(matrix.annotators).toEqual(['note.alice', 'note.bob', 'note.carol']);
    for (let i = 0; i < 3; i++) {
      expect(matrix.full_f1[i][i]).toBe(1);
      for (let j = 0; j < 3; j++) {
        expect(matrix.full_f1[i][j]).toBe(matrix.full_f1[j][i]);
        expect(matrix.boundary_f1[i][j]).toBeGreaterThanOrEqual(matrix.full_f1[i][j]);
      }
    }

    const markdown = await api.report('note.alice', 'note.bob', 'md');
    const container = document.createElement('div');
    renderReportMarkdown(container, markdown);
    expect(container.querySelectorAll('table.report-table').length).toBeGreaterThanOrEqual(2);
    expect(container.querySelectorAll('[class^="seg-"]').length).toBeGreaterThan(0);
  });
});
