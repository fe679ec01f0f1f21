/** DOM rendering. All rule decisions come from the service; this file only
 * draws state and forwards clicks into the draft models. */

import { GameApi, ServiceError } from './api';
import {
  AtomDraft, CatDraft, MoveDraft, NegDraft, StarDraft, UnionDraft, draftsFor,
  isValid,
} from './builders';
import { NewGameForm, PRESETS } from './presets';
import { Hint, Position, SessionState, showWord } from './types';

function el<K extends keyof HTMLElementTagNameMap>(
  tag: K, cls?: string, text?: string,
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  if (cls) node.className = cls;
  if (text !== undefined) node.textContent = text;
  return node;
}

function wordChip(w: string, cls = 'chip'): HTMLElement {
  return el('span', cls, showWord(w));
}

export class App {
  private session: SessionState | null = null;
  private draft: MoveDraft | null = null;
  private hint: Hint | null = null;
  private notice = '';
  private readonly form = new NewGameForm();

  constructor(private readonly api: GameApi, private readonly root: HTMLElement) {}

  start(): void {
    this.render();
  }

  private async guard(task: () => Promise<void>): Promise<void> {
    try {
      this.notice = '';
      await task();
    } catch (err) {
      this.notice = err instanceof ServiceError
        ? `${err.message}${err.violation ? `: ${err.violation}` : ''}`
        : String(err);
    }
    this.render();
  }

  private setSession(state: SessionState): void {
    this.session = state;
    this.draft = null;
    this.hint = null;
  }

  // -- actions ---------------------------------------------------------------

  private createGame(): Promise<void> {
    return this.guard(async () => {
      this.setSession(await this.api.createSession(this.form.toRequest()));
    });
  }

  private submitDraft(): Promise<void> {
    return this.guard(async () => {
      if (!this.session || !this.draft) return;
      const move = this.draft.serialize();
      const checked = await this.api.validateMove(this.session.id, move);
      if (!checked.ok) {
        this.notice = checked.violation ?? 'the service rejected this move';
        return;
      }
      this.setSession(await this.api.submitMove(this.session.id, move));
    });
  }

  private choose(branch: 1 | 2): Promise<void> {
    return this.guard(async () => {
      if (!this.session) return;
      this.setSession(await this.api.submitChoice(this.session.id, branch));
    });
  }

  private askHint(): Promise<void> {
    return this.guard(async () => {
      if (!this.session) return;
      this.hint = await this.api.hint(this.session.id);
    });
  }

  // -- rendering ---------------------------------------------------------------

  private render(): void {
    this.root.replaceChildren(this.renderForm(), this.renderSession());
    if (this.notice) {
      const bar = el('div', 'notice', this.notice);
      this.root.prepend(bar);
    }
  }

  private renderForm(): HTMLElement {
    const panel = el('section', 'panel form-panel');
    panel.append(el('h2', undefined, 'New game'));

    const presetRow = el('div', 'row');
    for (const preset of PRESETS) {
      const b = el('button', 'preset', preset.name);
      b.title = preset.description;
      b.onclick = () => {
        preset.apply(this.form);
        this.render();
      };
      presetRow.append(b);
    }
    panel.append(presetRow);

    const fields = el('div', 'fields');
    const addField = (label: string, input: HTMLElement) => {
      const wrap = el('label', 'field');
      wrap.append(el('span', undefined, label), input);
      fields.append(wrap);
    };

    const dialect = el('select');
    for (const d of ['re', 'resf', 'gre']) {
      const opt = el('option', undefined, d);
      opt.setAttribute('value', d);
      dialect.append(opt);
    }
    dialect.value = this.form.dialect;
    dialect.onchange = () => {
      this.form.dialect = dialect.value as NewGameForm['dialect'];
      this.form.s = this.form.dialect === 're' ? null : (this.form.s ?? 0);
      this.render();
    };
    addField('game', dialect);

    const k = el('input');
    k.type = 'number';
    k.value = String(this.form.k);
    k.oninput = () => { this.form.k = Number(k.value); };
    addField('size budget k', k);

    if (this.form.dialect !== 're') {
      const s = el('input');
      s.type = 'number';
      s.value = String(this.form.s ?? 0);
      s.oninput = () => { this.form.s = Number(s.value); };
      addField('star budget s', s);
    }

    const alphabet = el('input');
    alphabet.value = this.form.alphabet;
    alphabet.oninput = () => { this.form.alphabet = alphabet.value; };
    addField('alphabet', alphabet);

    const aWords = el('input');
    aWords.value = this.form.aText;
    aWords.oninput = () => { this.form.aText = aWords.value; };
    addField('A words (commas, ε allowed)', aWords);

    const bWords = el('input');
    bWords.value = this.form.bText;
    bWords.oninput = () => { this.form.bText = bWords.value; };
    addField('B words', bWords);

    const role = el('select');
    for (const [value, label] of [['s', 'S (claim a separator exists)'],
                                  ['d', 'D (refute the claim)']]) {
      const opt = el('option', undefined, label);
      opt.setAttribute('value', value);
      role.append(opt);
    }
    role.value = this.form.role;
    role.onchange = () => { this.form.role = role.value as NewGameForm['role']; };
    addField('play as', role);

    const engine = el('select');
    for (const mode of ['solver', 'expr']) {
      const opt = el('option', undefined, mode === 'solver' ? 'engine: solver'
        : 'engine: fixed expression');
      opt.setAttribute('value', mode);
      engine.append(opt);
    }
    engine.value = this.form.engineMode;
    engine.onchange = () => {
      this.form.engineMode = engine.value as NewGameForm['engineMode'];
      this.render();
    };
    addField('engine', engine);

    if (this.form.engineMode === 'expr') {
      const expr = el('input');
      expr.value = this.form.engineExpr;
      expr.oninput = () => { this.form.engineExpr = expr.value; };
      addField('engine expression', expr);
    }

    panel.append(fields);
    const problems = this.form.problems();
    if (problems.length > 0) {
      panel.append(el('div', 'problems', problems.map((p) => p.message).join('; ')));
    }
    const go = el('button', 'primary', 'Start game');
    go.disabled = problems.length > 0;
    go.onclick = () => { void this.createGame(); };
    panel.append(go);
    return panel;
  }

  private renderPosition(p: Position, title: string): HTMLElement {
    const box = el('div', 'position');
    box.append(el('h3', undefined, title));
    const budgets = p.s === undefined ? `k = ${p.k}` : `k = ${p.k}, s = ${p.s}`;
    box.append(el('div', 'budgets', budgets));
    const a = el('div', 'wordset');
    a.append(el('span', 'setlabel', 'A:'));
    for (const w of p.A) a.append(wordChip(w, 'chip a-side'));
    if (p.A.length === 0) a.append(el('span', 'empty-set', '(empty)'));
    const b = el('div', 'wordset');
    b.append(el('span', 'setlabel', 'B:'));
    for (const w of p.B) b.append(wordChip(w, 'chip b-side'));
    if (p.B.length === 0) b.append(el('span', 'empty-set', '(empty)'));
    box.append(a, b);
    return box;
  }

  private renderSession(): HTMLElement {
    const panel = el('section', 'panel game-panel');
    if (!this.session) {
      panel.append(el('p', 'placeholder',
        'Start a game: S sketches a separating expression move by move, '
        + 'D picks the branch to attack.'));
      return panel;
    }
    const s = this.session;
    panel.append(el('h2', undefined, `Session ${s.id} - you play ${s.human_role.toUpperCase()}`));
    if (s.status !== 'ongoing') {
      const banner = el('div', `banner ${s.status}`,
        s.status === 'won_by_s' ? 'S wins: the separation claim held.'
          : 'D wins: the claim was refuted.');
      panel.append(banner);
      panel.append(el('div', 'trace', `moves played: ${s.move_trace.join(' -> ') || '(none)'}`));
    }
    panel.append(this.renderPosition(s.position, 'Current position'));

    if (s.status === 'ongoing' && s.awaiting === 'human_choice' && s.pending_children) {
      panel.append(this.renderChoice(s.pending_children));
    }
    if (s.status === 'ongoing' && s.awaiting === 'human_move') {
      panel.append(this.renderBuilder(s.position));
    }
    const hintRow = el('div', 'row');
    if (s.status === 'ongoing') {
      const hintBtn = el('button', undefined, 'Hint');
      hintBtn.onclick = () => { void this.askHint(); };
      hintRow.append(hintBtn);
    }
    if (this.hint) {
      hintRow.append(el('span', 'hint',
        `value: ${this.hint.value}`
        + (this.hint.branch ? `, suggested branch ${this.hint.branch}` : '')
        + (this.hint.move ? `, suggested move: ${this.hint.move.type}` : '')
        + (this.hint.note ? ` (${this.hint.note})` : '')));
    }
    panel.append(hintRow);
    panel.append(this.renderHistory());
    return panel;
  }

  private renderChoice(children: [Position, Position]): HTMLElement {
    const box = el('div', 'choice');
    box.append(el('h3', undefined, 'Your choice: pick the branch to attack'));
    const row = el('div', 'row choice-row');
    children.forEach((child, i) => {
      const card = el('div', 'choice-card');
      card.append(this.renderPosition(child, `Branch ${i + 1}`));
      const pick = el('button', 'primary', `Attack branch ${i + 1}`);
      pick.onclick = () => { void this.choose((i + 1) as 1 | 2); };
      card.append(pick);
      row.append(card);
    });
    box.append(row);
    return box;
  }

  private renderBuilder(p: Position): HTMLElement {
    const box = el('div', 'builder');
    box.append(el('h3', undefined, 'Your move'));
    const tabs = el('div', 'row tabs');
    for (const draft of draftsFor(p)) {
      const tab = el('button', 'tab', draft.kind);
      if (this.draft?.kind === draft.kind) tab.classList.add('active');
      tab.onclick = () => {
        this.draft = draft;
        this.render();
      };
      tabs.append(tab);
    }
    box.append(tabs);
    if (this.draft) {
      box.append(this.renderDraft(this.draft, p));
      const problems = this.draft.problems();
      if (problems.length > 0) {
        box.append(el('div', 'problems', problems.map((x) => x.message).join('; ')));
      }
      const submit = el('button', 'primary', 'Play move');
      submit.disabled = !isValid(this.draft);
      submit.onclick = () => { void this.submitDraft(); };
      box.append(submit);
    }
    return box;
  }

  private renderDraft(draft: MoveDraft, p: Position): HTMLElement {
    if (draft instanceof AtomDraft) return this.renderAtom(draft, p);
    if (draft instanceof UnionDraft) return this.renderUnion(draft);
    if (draft instanceof CatDraft) return this.renderCat(draft);
    if (draft instanceof StarDraft) return this.renderStar(draft);
    if (draft instanceof NegDraft) {
      return el('p', 'describe', 'Swap the two sides and spend one size unit.');
    }
    return el('p', 'describe', 'Claim A is empty.');
  }

  private renderAtom(draft: AtomDraft, p: Position): HTMLElement {
    const box = el('div', 'atom-picker row');
    for (const sym of [...p.alphabet, '']) {
      const b = el('button', 'chip-btn', showWord(sym));
      if (draft.symbol === sym) b.classList.add('active');
      b.onclick = () => {
        draft.symbol = sym;
        this.render();
      };
      box.append(b);
    }
    return box;
  }

  private budgetControls(draft: UnionDraft | CatDraft): HTMLElement {
    const p = draft.budget.position;
    const box = el('div', 'budget-row row');
    const k1 = el('input');
    k1.type = 'range';
    k1.min = '1';
    k1.max = String(Math.max(1, p.k - 2));
    k1.value = String(draft.budget.k1);
    const label = el('span', 'budget-label',
      `k1 = ${draft.budget.k1}, k2 = ${draft.budget.k2}`);
    k1.oninput = () => {
      draft.budget.k1 = Number(k1.value);
      this.render();
    };
    box.append(label, k1);
    if (p.s !== undefined) {
      const s1 = el('input');
      s1.type = 'range';
      s1.min = '0';
      s1.max = String(p.s);
      s1.value = String(draft.budget.s1 ?? 0);
      const slabel = el('span', 'budget-label',
        `s1 = ${draft.budget.s1}, s2 = ${draft.budget.s2}`);
      s1.oninput = () => {
        draft.budget.s1 = Number(s1.value);
        this.render();
      };
      box.append(slabel, s1);
    }
    return box;
  }

  private renderUnion(draft: UnionDraft): HTMLElement {
    const box = el('div', 'union-builder');
    box.append(el('p', 'describe',
      'Put every A-word in at least one bucket; D will pick a bucket.'));
    for (const [w, cell] of draft.buckets) {
      const row = el('div', 'row');
      row.append(wordChip(w, 'chip a-side'));
      const b1 = el('button', 'chip-btn', 'bucket 1');
      if (cell.first) b1.classList.add('active');
      b1.onclick = () => { draft.toggle(w, 1); this.render(); };
      const b2 = el('button', 'chip-btn', 'bucket 2');
      if (cell.second) b2.classList.add('active');
      b2.onclick = () => { draft.toggle(w, 2); this.render(); };
      row.append(b1, b2);
      box.append(row);
    }
    box.append(this.budgetControls(draft));
    return box;
  }

  private wordWithCuts(word: string, isCut: (i: number) => boolean,
                       onCut: (i: number) => void, interiorOnly: boolean): HTMLElement {
    const box = el('span', 'cut-word');
    const lo = interiorOnly ? 1 : 0;
    const hi = interiorOnly ? word.length - 1 : word.length;
    for (let i = 0; i <= word.length; i++) {
      if (i >= lo && i <= hi) {
        const marker = el('button', 'cut-marker', isCut(i) ? '|' : '·');
        if (isCut(i)) marker.classList.add('active');
        marker.onclick = () => onCut(i);
        box.append(marker);
      }
      if (i < word.length) box.append(el('span', 'letter', word[i]));
    }
    return box;
  }

  private renderCat(draft: CatDraft): HTMLElement {
    const box = el('div', 'cat-builder');
    box.append(el('p', 'describe',
      'Cut each A-word once; for each B-word send every 2-split to a side.'));
    for (const [w] of draft.aCuts) {
      if (w === '') {
        box.append(el('div', 'row', 'ε splits only as (ε, ε)'));
        continue;
      }
      const row = el('div', 'row');
      row.append(el('span', 'setlabel', 'cut:'));
      row.append(this.wordWithCuts(
        w,
        (i) => draft.aCuts.get(w) === i,
        (i) => { draft.setCut(w, i); this.render(); },
        false,
      ));
      box.append(row);
    }
    for (const [v, sides] of draft.bSides) {
      const row = el('div', 'row sides-row');
      row.append(wordChip(v, 'chip b-side'));
      sides.forEach((side, i) => {
        const b = el('button', 'chip-btn',
          `${showWord(v.slice(0, i))}/${showWord(v.slice(i))}: ${side}`);
        b.onclick = () => { draft.toggleSide(v, i); this.render(); };
        row.append(b);
      });
      box.append(row);
    }
    box.append(this.budgetControls(draft));
    return box;
  }

  private renderStar(draft: StarDraft): HTMLElement {
    const box = el('div', 'star-builder');
    box.append(el('p', 'describe',
      'Cut each nonempty A-word into nonempty pieces, then assemble a set '
      + "B' holding a piece of every decomposition of every B-word."));
    for (const [w, cuts] of draft.aCuts) {
      const row = el('div', 'row');
      row.append(el('span', 'setlabel', 'cuts:'));
      row.append(this.wordWithCuts(
        w,
        (i) => cuts.has(i),
        (i) => { draft.toggleCut(w, i); this.render(); },
        true,
      ));
      box.append(row);
    }
    const chips = el('div', 'row chips');
    chips.append(el('span', 'setlabel', "B' chips:"));
    for (const chip of draft.suggestedChips()) {
      const b = el('button', 'chip-btn', chip);
      if (draft.bPrime.has(chip)) b.classList.add('active');
      b.onclick = () => { draft.toggleChip(chip); this.render(); };
      chips.append(b);
    }
    box.append(chips);
    return box;
  }

  private renderHistory(): HTMLElement {
    const box = el('div', 'history');
    box.append(el('h3', undefined, 'Timeline'));
    const list = el('ol', 'timeline');
    for (const event of this.session?.history ?? []) {
      const text = event.kind === 'move'
        ? `${event.actor} played ${event.move?.type}`
        : `${event.actor} chose branch ${event.branch}`;
      list.append(el('li', `event ${event.actor}`, text));
    }
    if ((this.session?.history ?? []).length === 0) {
      list.append(el('li', 'event', 'no moves yet'));
    }
    box.append(list);
    return box;
  }
}
