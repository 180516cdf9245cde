import { beforeEach, describe, expect, it } from 'vitest';

import { AnnotatorApp } from '../src/app.js';
import { FakeApi } from './fakeApi.js';
import { pressKey, selectCp, tick } from './domHelpers.js';

async function makeApp(api: FakeApi): Promise<AnnotatorApp> {
  document.body.innerHTML = '<div id="root"></div>';
  const root = document.getElementById('root')!;
  return AnnotatorApp.create(root, api, 'doc1');
}

describe('AnnotatorApp shortcut flows', () => {
  let api: FakeApi;
  let app: AnnotatorApp;

  beforeEach(async () => {
    api = new FakeApi('New York is big');
    app = await makeApp(api);
  });

  it('select + bound key issues exactly one annotate call and renders one blue region', async () => {
    selectCp(app.textArea, app.payload.text, 0, 8);
    await app.handleKeydown(pressKey('a'));

    expect(api.callsTo('annotate')).toEqual([['doc1', 0, 8, 'a', 0]]);
    const regions = app.textArea.querySelectorAll('.span-human');
    expect(regions.length).toBe(1);
    expect(regions[0].textContent).toBe('New York');
    expect(app.payload.version).toBe(1);
  });

  it('keydown events dispatched on the page reach the handler', async () => {
    selectCp(app.textArea, app.payload.text, 0, 8);
    document.dispatchEvent(pressKey('a'));
    await tick();
    expect(api.callsTo('annotate').length).toBe(1);
  });

  it('caret inside a span + bound key relabels', async () => {
    selectCp(app.textArea, app.payload.text, 0, 8);
    await app.handleKeydown(pressKey('a'));
    selectCp(app.textArea, app.payload.text, 3, 3);
    await app.handleKeydown(pressKey('c'));

    expect(api.callsTo('relabel')).toEqual([['doc1', 3, 'c', 1]]);
    expect(app.textArea.querySelector('.span-human')!.getAttribute('data-label')).toBe('Person');
  });

  it('unbound key makes no API call and posts a notice', async () => {
    selectCp(app.textArea, app.payload.text, 0, 8);
    await app.handleKeydown(pressKey('z'));

    expect(api.callsTo('annotate')).toEqual([]);
    expect(api.callsTo('relabel')).toEqual([]);
    expect(app.noticeLine.textContent).toContain("no label bound to key 'z'");
  });

  it('q vetoes the suggestion under the caret', async () => {
    api = new FakeApi('New York is big', [], [
      { start: 0, end: 8, label: 'Artificial', origin: 'recommended' },
    ]);
    app = await makeApp(api);
    expect(app.textArea.querySelectorAll('.span-suggestion').length).toBe(1);

    selectCp(app.textArea, app.payload.text, 4, 4);
    await app.handleKeydown(pressKey('q'));

    expect(api.callsTo('deleteAt')).toEqual([['doc1', 4, 0]]);
    expect(app.textArea.querySelectorAll('.span-suggestion').length).toBe(0);
  });

  it('Ctrl+Z undoes the last action', async () => {
    selectCp(app.textArea, app.payload.text, 0, 8);
    await app.handleKeydown(pressKey('a'));
    await app.handleKeydown(pressKey('z', { ctrl: true }));

    expect(api.callsTo('undo')).toEqual([['doc1', 1]]);
    expect(app.textArea.querySelectorAll('.span-human').length).toBe(0);
  });

  it('typing into the command input is not treated as shortcuts', async () => {
    app.commandInput.focus();
    const event = new KeyboardEvent('keydown', { key: 'a', bubbles: true });
    Object.defineProperty(event, 'target', { value: app.commandInput });
    await app.handleKeydown(event);
    expect(api.callsTo('annotate')).toEqual([]);
    expect(api.callsTo('relabel')).toEqual([]);
  });

  it('stale version responses trigger a refetch and a retry notice', async () => {
    api.doc.version = 5; // server moved on; the app still shows v0
    selectCp(app.textArea, app.payload.text, 0, 8);
    await app.handleKeydown(pressKey('a'));

    expect(app.payload.version).toBe(5);
    expect(app.noticeLine.textContent).toContain('retry');
  });
});

describe('AnnotatorApp command entry', () => {
  let api: FakeApi;
  let app: AnnotatorApp;

  beforeEach(async () => {
    api = new FakeApi('abcdefghij');
    app = await makeApp(api);
  });

  it('a three-pair command yields three rendered spans', async () => {
    selectCp(app.textArea, app.payload.text, 0, 0);
    app.commandInput.value = '2A3D2B';
    await app.submitCommand();

    expect(api.callsTo('command')).toEqual([['doc1', '2A3D2B', 0, 0]]);
    const regions = app.textArea.querySelectorAll('.span-human');
    expect(regions.length).toBe(3);
    expect([...regions].map((r) => r.textContent)).toEqual(['ab', 'cde', 'fg']);
    expect(app.commandInput.value).toBe('');
  });

  it('syntax errors surface inline with the offending position marked', async () => {
    app.commandInput.value = '2A3';
    await app.submitCommand();

    expect(app.commandError.textContent).toContain('2A>>3');
    expect(app.textArea.querySelectorAll('.span-human').length).toBe(0);
    expect(app.commandInput.value).toBe('2A3');
  });
});

describe('AnnotatorApp shortcut remapping', () => {
  it('ReMap PUTs the schema and mirrors the server ack in the panel', async () => {
    const api = new FakeApi('some text');
    const app = await makeApp(api);

    const input = app.shortcutPanel.querySelector<HTMLInputElement>('input[data-key="a"]')!;
    expect(input.value).toBe('Artificial');
    input.value = 'Animal';
    await app.remap();

    expect(api.callsTo('putSchema').length).toBe(1);
    const refreshed = app.shortcutPanel.querySelector<HTMLInputElement>('input[data-key="a"]')!;
    expect(refreshed.value).toBe('Animal');
    expect(app.noticeLine.textContent).toContain('updated');

    // the new binding is what subsequent annotations use
    selectCp(app.textArea, app.payload.text, 0, 4);
    await app.handleKeydown(pressKey('a'));
    expect(app.textArea.querySelector('.span-human')!.getAttribute('data-label')).toBe('Animal');
  });

  it('rejected remaps keep the panel usable and show the error', async () => {
    const api = new FakeApi('some text');
    const app = await makeApp(api);
    const input = app.shortcutPanel.querySelector<HTMLInputElement>('input[data-key="a"]')!;
    input.value = '';
    await app.remap();
    expect(app.noticeLine.textContent).toContain('SchemaInvalid');
  });
});

describe('AnnotatorApp recommend toggle', () => {
  it('RM off clears suggestions, RM on refetches', async () => {
    const api = new FakeApi('abc def', [], [
      { start: 4, end: 7, label: 'Misc', origin: 'recommended' },
    ]);
    const app = await makeApp(api);
    expect(app.textArea.querySelectorAll('.span-suggestion').length).toBe(1);

    app.rmOffButton.click();
    await tick();
    expect(api.callsTo('setRecommend')).toEqual([[false]]);
    expect(app.textArea.querySelectorAll('.span-suggestion').length).toBe(0);
    expect(app.statusLine.textContent).toContain('recommend off');
  });
});
