/** Move-under-construction models.
 *
 * Each draft mirrors the server's side conditions closely enough that the
 * submit button can stay disabled while a move would be rejected, but the
 * server remains the source of truth: drafts only ever serialize to
 * schema-valid moves, and the view double-checks against the validate
 * endpoint.  Budgets are modeled with derived second components so the
 * arithmetic side conditions (k1+k2+1=k, s1+s2=s) hold by construction.
 */

import { CatMove, Move, Position, StarMove, UnionMove } from './types';

export interface DraftProblem {
  field: string;
  message: string;
}

export interface MoveDraft {
  readonly kind: Move['type'];
  problems(): DraftProblem[];
  serialize(): Move;
}

export function isValid(draft: MoveDraft): boolean {
  return draft.problems().length === 0;
}

function requireValid(draft: MoveDraft): void {
  const problems = draft.problems();
  if (problems.length > 0) {
    throw new Error(`draft not submittable: ${problems[0].message}`);
  }
}

export function factorsOf(word: string): string[] {
  const out = new Set<string>(['']);
  for (let i = 0; i < word.length; i++) {
    for (let j = i + 1; j <= word.length; j++) {
      out.add(word.slice(i, j));
    }
  }
  return [...out].sort((a, b) => a.length - b.length || (a < b ? -1 : a > b ? 1 : 0));
}

/** Can the word be written as nonempty pieces that all avoid the given set? */
export function composableAvoiding(word: string, avoid: Set<string>): boolean {
  const reach = new Array<boolean>(word.length + 1).fill(false);
  reach[0] = true;
  for (let j = 1; j <= word.length; j++) {
    for (let i = 0; i < j; i++) {
      if (reach[i] && !avoid.has(word.slice(i, j))) {
        reach[j] = true;
        break;
      }
    }
  }
  return reach[word.length];
}

/** Shared budget model: the second component is derived, never edited. */
export class BudgetSplit {
  k1: number;
  s1: number | null;

  constructor(readonly position: Position) {
    this.k1 = Math.max(1, Math.min(position.k - 2, Math.floor((position.k - 1) / 2)));
    this.s1 = position.s === undefined ? null : 0;
  }

  get k2(): number {
    return this.position.k - 1 - this.k1;
  }

  get s2(): number | null {
    return this.s1 === null || this.position.s === undefined
      ? null : this.position.s - this.s1;
  }

  problems(): DraftProblem[] {
    const out: DraftProblem[] = [];
    if (this.position.k < 3) {
      out.push({ field: 'budget', message: 'size budget too small for a binary move' });
      return out;
    }
    if (this.k1 < 1 || this.k2 < 1) {
      out.push({ field: 'budget', message: 'both sides need size budget at least 1' });
    }
    if (this.position.s !== undefined) {
      const s1 = this.s1 ?? -1;
      const s2 = this.s2 ?? -1;
      if (s1 < 0 || s2 < 0) {
        out.push({ field: 'budget', message: 'star budgets must be nonnegative' });
      } else if (s1 > this.k1 || s2 > this.k2) {
        out.push({ field: 'budget', message: 'a side has more stars than size' });
      }
    }
    return out;
  }
}

export class AtomDraft implements MoveDraft {
  readonly kind = 'atom';
  symbol = '';

  constructor(readonly position: Position) {}

  problems(): DraftProblem[] {
    if (this.symbol !== '' && !this.position.alphabet.includes(this.symbol)) {
      return [{ field: 'symbol', message: `${this.symbol} is not an alphabet symbol` }];
    }
    return [];
  }

  serialize(): Move {
    requireValid(this);
    return { type: 'atom', symbol: this.symbol };
  }
}

export class EmptyDraft implements MoveDraft {
  readonly kind = 'empty';

  problems(): DraftProblem[] {
    return [];
  }

  serialize(): Move {
    return { type: 'empty' };
  }
}

export class NegDraft implements MoveDraft {
  readonly kind = 'neg';

  constructor(readonly position: Position) {}

  problems(): DraftProblem[] {
    const p = this.position;
    if (p.dialect === 're') {
      return [{ field: 'move', message: 'the RE game has no complement move' }];
    }
    if (p.dialect === 'gre' && (p.s ?? 0) > p.k - 1) {
      return [{ field: 'move', message: 'complement leaves too little size budget' }];
    }
    return [];
  }

  serialize(): Move {
    requireValid(this);
    return { type: 'neg' };
  }
}

export class UnionDraft implements MoveDraft {
  readonly kind = 'union';
  readonly budget: BudgetSplit;
  /** word -> which buckets it sits in; words may sit in both */
  readonly buckets = new Map<string, { first: boolean; second: boolean }>();

  constructor(readonly position: Position) {
    this.budget = new BudgetSplit(position);
    for (const w of position.A) {
      this.buckets.set(w, { first: false, second: false });
    }
  }

  toggle(word: string, side: 1 | 2): void {
    const cell = this.buckets.get(word);
    if (!cell) return;
    if (side === 1) cell.first = !cell.first;
    else cell.second = !cell.second;
  }

  problems(): DraftProblem[] {
    const out = this.budget.problems();
    for (const [w, cell] of this.buckets) {
      if (!cell.first && !cell.second) {
        out.push({ field: 'buckets', message: `${w === '' ? 'ε' : w} is in neither bucket` });
      }
    }
    return out;
  }

  serialize(): UnionMove {
    requireValid(this);
    const a1: string[] = [];
    const a2: string[] = [];
    for (const [w, cell] of this.buckets) {
      if (cell.first) a1.push(w);
      if (cell.second) a2.push(w);
    }
    return {
      type: 'union', a1, a2,
      k1: this.budget.k1, k2: this.budget.k2,
      s1: this.budget.s1, s2: this.budget.s2,
    };
  }
}

export class CatDraft implements MoveDraft {
  readonly kind = 'cat';
  readonly budget: BudgetSplit;
  /** cut index per A-word; null until the player clicks one */
  readonly aCuts = new Map<string, number | null>();
  /** per B-word, one side (1|2) per 2-split; prefilled with the suffix side */
  readonly bSides = new Map<string, (1 | 2)[]>();

  constructor(readonly position: Position) {
    this.budget = new BudgetSplit(position);
    for (const w of position.A) this.aCuts.set(w, w === '' ? 0 : null);
    for (const v of position.B) this.bSides.set(v, new Array(v.length + 1).fill(2));
  }

  setCut(word: string, cut: number): void {
    if (cut >= 0 && cut <= word.length) this.aCuts.set(word, cut);
  }

  toggleSide(word: string, splitIndex: number): void {
    const sides = this.bSides.get(word);
    if (sides && splitIndex >= 0 && splitIndex < sides.length) {
      sides[splitIndex] = sides[splitIndex] === 1 ? 2 : 1;
    }
  }

  problems(): DraftProblem[] {
    const out = this.budget.problems();
    for (const [w, cut] of this.aCuts) {
      if (cut === null) {
        out.push({ field: 'cuts', message: `no cut chosen inside ${w === '' ? 'ε' : w}` });
      }
    }
    return out;
  }

  serialize(): CatMove {
    requireValid(this);
    const a_cuts: Record<string, number> = {};
    for (const [w, cut] of this.aCuts) a_cuts[w] = cut as number;
    const b_sides: Record<string, number[]> = {};
    for (const [v, sides] of this.bSides) b_sides[v] = [...sides];
    return {
      type: 'cat', a_cuts, b_sides,
      k1: this.budget.k1, k2: this.budget.k2,
      s1: this.budget.s1, s2: this.budget.s2,
    };
  }
}

export class StarDraft implements MoveDraft {
  readonly kind = 'star';
  /** interior cut positions per nonempty A-word (possibly none: one piece) */
  readonly aCuts = new Map<string, Set<number>>();
  readonly bPrime = new Set<string>();

  constructor(readonly position: Position) {
    for (const w of position.A) {
      if (w !== '') this.aCuts.set(w, new Set());
    }
  }

  toggleCut(word: string, cut: number): void {
    const cuts = this.aCuts.get(word);
    if (!cuts || cut < 1 || cut > word.length - 1) return;
    if (cuts.has(cut)) cuts.delete(cut);
    else cuts.add(cut);
  }

  toggleChip(word: string): void {
    if (this.bPrime.has(word)) this.bPrime.delete(word);
    else this.bPrime.add(word);
  }

  /** factor chips the player can pick B' from */
  suggestedChips(): string[] {
    const chips = new Set<string>();
    for (const v of this.position.B) {
      for (const f of factorsOf(v)) {
        if (f !== '') chips.add(f);
      }
    }
    return [...chips].sort((a, b) => a.length - b.length || (a < b ? -1 : a > b ? 1 : 0));
  }

  problems(): DraftProblem[] {
    const out: DraftProblem[] = [];
    const p = this.position;
    if (p.s !== undefined && p.s < 1) {
      out.push({ field: 'move', message: 'no star budget left' });
    }
    if (p.B.includes('')) {
      out.push({ field: 'move', message: 'ε is in B, so the star move loses outright' });
    }
    const chips = new Set(this.suggestedChips());
    for (const w of this.bPrime) {
      if (!chips.has(w)) {
        out.push({ field: 'bPrime', message: `${w} is not a factor of any B-word` });
      }
    }
    for (const v of p.B) {
      if (v !== '' && composableAvoiding(v, this.bPrime)) {
        out.push({
          field: 'bPrime',
          message: `B' misses a decomposition of ${v}`,
        });
      }
    }
    return out;
  }

  serialize(): StarMove {
    requireValid(this);
    const a_cuts: Record<string, number[]> = {};
    for (const [w, cuts] of this.aCuts) {
      a_cuts[w] = [...cuts].sort((x, y) => x - y);
    }
    return { type: 'star', a_cuts, b_prime: [...this.bPrime].sort() };
  }
}

/** The move kinds offered at a position, in the engine's canonical order. */
export function draftsFor(position: Position): MoveDraft[] {
  const drafts: MoveDraft[] = [
    new AtomDraft(position),
    new EmptyDraft(),
  ];
  if (position.k >= 3) {
    drafts.push(new UnionDraft(position), new CatDraft(position));
  }
  if (position.k >= 2 && (position.s === undefined || position.s >= 1)
      && !position.B.includes('')) {
    drafts.push(new StarDraft(position));
  }
  if (position.dialect !== 're' && position.k >= 2) {
    drafts.push(new NegDraft(position));
  }
  return drafts;
}
