/** Page bootstrap: document picker plus annotator and admin views.
 * The API base URL defaults to same-origin and can be overridden with
 * ``?api=http://host:port``.
 */

import { AdminApp } from './admin.js';
import { Api, ApiClient } from './api.js';
import { AnnotatorApp } from './app.js';

function apiBase(): string {
  const params = new URLSearchParams(window.location.search);
  return params.get('api') ?? '';
}

async function boot(): Promise<void> {
  const api: Api = new ApiClient(apiBase());
  const picker = document.getElementById('doc-picker') as HTMLSelectElement;
  const annotatorRoot = document.getElementById('annotator')!;
  const adminRoot = document.getElementById('admin')!;
  const adminToggle = document.getElementById('admin-toggle') as HTMLButtonElement;

  const listing = await api.listDocs();
  for (const doc of listing.documents) {
    const option = document.createElement('option');
    option.value = doc.id;
    option.textContent = doc.id;
    picker.appendChild(option);
  }

  async function openSelected(): Promise<void> {
    if (picker.value) {
      await AnnotatorApp.create(annotatorRoot, api, picker.value);
    }
  }

  picker.addEventListener('change', () => void openSelected());
  adminToggle.addEventListener('click', () => {
    const hidden = adminRoot.style.display === 'none';
    adminRoot.style.display = hidden ? 'block' : 'none';
    if (hidden) void new AdminApp(adminRoot, api).load();
  });

  await openSelected();
}

window.addEventListener('DOMContentLoaded', () => {
  boot().catch((error) => {
    const el = document.getElementById('annotator');
    if (el) el.textContent = `failed to reach the annotation service: ${error}`;
  });
});
