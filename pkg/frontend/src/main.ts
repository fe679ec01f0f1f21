import { GameApi } from './api';
import { App } from './view';

const base = new URLSearchParams(window.location.search).get('service')
  ?? 'http://127.0.0.1:8000';
const root = document.getElementById('app');
if (!root) {
  throw new Error('missing #app element');
}
new App(new GameApi(base), root).start();
