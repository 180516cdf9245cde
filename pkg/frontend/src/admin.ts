/** Administrator views: agreement matrix and pairwise report. */

import { Api } from './api.js';
import { MatrixPayload } from './types.js';

function heat(value: number): string {
  // white -> blue ramp over [0, 1]
  const intensity = Math.round(255 - value * 120);
  return `rgb(${intensity}, ${intensity}, 255)`;
}

export function renderMatrix(container: HTMLElement, matrix: MatrixPayload): void {
  container.innerHTML = '';
  for (const [title, grid] of [
    ['Full level F1', matrix.full_f1],
    ['Boundary level F1', matrix.boundary_f1],
  ] as const) {
    const heading = document.createElement('h3');
    heading.textContent = title;
    container.appendChild(heading);

    const table = document.createElement('table');
    table.className = 'matrix';
    const head = document.createElement('tr');
    head.appendChild(document.createElement('th'));
    for (const name of matrix.annotators) {
      const th = document.createElement('th');
      th.textContent = name;
      head.appendChild(th);
    }
    table.appendChild(head);
    matrix.annotators.forEach((rowName, i) => {
      const tr = document.createElement('tr');
      const th = document.createElement('th');
      th.textContent = rowName;
      tr.appendChild(th);
      matrix.annotators.forEach((_, j) => {
        const td = document.createElement('td');
        td.textContent = grid[i][j].toFixed(4);
        td.style.backgroundColor = heat(grid[i][j]);
        tr.appendChild(td);
      });
      table.appendChild(tr);
    });
    container.appendChild(table);
  }
}

/** Minimal renderer for the service's Markdown report: headings and
 * tables become HTML; the content-comparison line already carries
 * color-coded ``<span class="seg-...">`` markup and is inlined as-is.
 */
export function renderReportMarkdown(container: HTMLElement, markdown: string): void {
  container.innerHTML = '';
  const lines = markdown.split('\n');
  let table: HTMLTableElement | null = null;
  for (const line of lines) {
    if (line.startsWith('|')) {
      if (table === null) {
        table = document.createElement('table');
        table.className = 'report-table';
        container.appendChild(table);
      }
      const cells = line.split('|').slice(1, -1).map((cell) => cell.trim());
      if (cells.every((cell) => /^-+$/.test(cell))) continue;
      const tr = document.createElement('tr');
      for (const cell of cells) {
        const td = document.createElement('td');
        td.textContent = cell;
        tr.appendChild(td);
      }
      table.appendChild(tr);
      continue;
    }
    table = null;
    if (line.startsWith('#')) {
      const depth = line.match(/^#+/)![0].length;
      const heading = document.createElement(`h${Math.min(depth + 1, 6)}`);
      heading.textContent = line.slice(depth).trim();
      container.appendChild(heading);
    } else if (line.includes('<span class="seg-')) {
      const content = document.createElement('div');
      content.className = 'report-content';
      content.innerHTML = line;
      container.appendChild(content);
    } else if (line.trim() !== '') {
      const p = document.createElement('p');
      p.textContent = line;
      container.appendChild(p);
    }
  }
}

export class AdminApp {
  constructor(readonly root: HTMLElement, readonly api: Api) {
    root.innerHTML = `
      <div class="admin">
        <section><h2>Agreement matrix</h2><div class="matrix-view"></div></section>
        <section>
          <h2>Pairwise comparison</h2>
          <div class="report-controls">
            <select class="report-a"></select>
            <select class="report-b"></select>
            <button class="report-run">Compare</button>
          </div>
          <div class="report-view"></div>
        </section>
      </div>`;
    this.root.querySelector<HTMLButtonElement>('.report-run')!.addEventListener(
      'click',
      () => void this.showReport(),
    );
  }

  async load(): Promise<void> {
    const listing = await this.api.listDocs();
    for (const cls of ['.report-a', '.report-b']) {
      const select = this.root.querySelector<HTMLSelectElement>(cls)!;
      select.innerHTML = '';
      for (const doc of listing.documents) {
        const option = document.createElement('option');
        option.value = doc.id;
        option.textContent = doc.id;
        select.appendChild(option);
      }
    }
    renderMatrix(
      this.root.querySelector<HTMLElement>('.matrix-view')!,
      await this.api.matrix(),
    );
  }

  async showReport(): Promise<void> {
    const a = this.root.querySelector<HTMLSelectElement>('.report-a')!.value;
    const b = this.root.querySelector<HTMLSelectElement>('.report-b')!.value;
    const markdown = await this.api.report(a, b, 'md');
    renderReportMarkdown(this.root.querySelector<HTMLElement>('.report-view')!, markdown);
  }
}
