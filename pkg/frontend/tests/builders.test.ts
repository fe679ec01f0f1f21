import { describe, expect, it } from 'vitest';

import {
  AtomDraft, CatDraft, EmptyDraft, NegDraft, StarDraft, UnionDraft,
  composableAvoiding, draftsFor, factorsOf, isValid,
} from '../src/builders';
import { NewGameForm, PRESETS } from '../src/presets';
import { Position } from '../src/types';

const reDemo: Position = {
  dialect: 're', k: 3, alphabet: ['a', 'b'], A: ['ab'], B: ['a', 'b', ''],
};
const greSmall: Position = {
  dialect: 'gre', k: 4, s: 1, alphabet: ['a', 'b'], A: ['ab', 'b'], B: ['aa'],
};

describe('factor helpers', () => {
  it('lists factors shortest first', () => {
    expect(factorsOf('ab')).toEqual(['', 'a', 'b', 'ab']);
  });

  it('detects decompositions avoiding a set', () => {
    expect(composableAvoiding('aa', new Set(['a', 'aa']))).toBe(false);
    expect(composableAvoiding('aa', new Set(['aa']))).toBe(true);
    expect(composableAvoiding('aa', new Set(['a']))).toBe(true);
  });
});

describe('draft availability', () => {
  it('offers binary moves only with budget for both sides', () => {
    const kinds = draftsFor({ ...reDemo, k: 2 }).map((d) => d.kind);
    expect(kinds).not.toContain('union');
    expect(kinds).not.toContain('cat');
  });

  it('never offers complement in the re game', () => {
    expect(draftsFor(reDemo).map((d) => d.kind)).not.toContain('neg');
  });

  it('hides the star move when the empty word sits in B', () => {
    expect(draftsFor(reDemo).map((d) => d.kind)).not.toContain('star');
    const noEps = { ...reDemo, B: ['a'] };
    expect(draftsFor(noEps).map((d) => d.kind)).toContain('star');
  });

  it('hides the star move without star budget', () => {
    expect(draftsFor({ ...greSmall, s: 0 }).map((d) => d.kind)).not.toContain('star');
  });
});

describe('atom and empty drafts', () => {
  it('accepts alphabet symbols and the empty word', () => {
    const draft = new AtomDraft(reDemo);
    expect(isValid(draft)).toBe(true); // '' is the empty word
    draft.symbol = 'a';
    expect(isValid(draft)).toBe(true);
    draft.symbol = 'z';
    expect(isValid(draft)).toBe(false);
  });

  it('serializes the spec shape', () => {
    expect(new EmptyDraft().serialize()).toEqual({ type: 'empty' });
  });
});

describe('union draft', () => {
  it('requires every word in some bucket', () => {
    const draft = new UnionDraft(greSmall);
    expect(isValid(draft)).toBe(false);
    draft.toggle('ab', 1);
    draft.toggle('b', 2);
    expect(isValid(draft)).toBe(true);
  });

  it('keeps budget arithmetic by construction', () => {
    const draft = new UnionDraft(greSmall);
    draft.toggle('ab', 1);
    draft.toggle('b', 2);
    draft.budget.k1 = 2;
    const move = draft.serialize();
    expect(move.k1 + move.k2 + 1).toBe(greSmall.k);
    expect((move.s1 ?? 0) + (move.s2 ?? 0)).toBe(greSmall.s);
  });

  it('allows overlapping buckets', () => {
    const draft = new UnionDraft(greSmall);
    draft.toggle('ab', 1);
    draft.toggle('ab', 2);
    draft.toggle('b', 2);
    const move = draft.serialize();
    expect(move.a1).toEqual(['ab']);
    expect(move.a2).toEqual(['ab', 'b']);
  });

  it('rejects a star-heavy side', () => {
    const draft = new UnionDraft({ ...greSmall, k: 5, s: 3 });
    draft.toggle('ab', 1);
    draft.toggle('b', 2);
    draft.budget.k1 = 3;
    draft.budget.s1 = 0; // forces s2 = 3 > k2 = 1
    expect(isValid(draft)).toBe(false);
    expect(() => draft.serialize()).toThrow(/not submittable/);
  });
});

describe('cat draft', () => {
  it('needs one cut per A-word and prefills B sides', () => {
    const draft = new CatDraft(reDemo);
    expect(isValid(draft)).toBe(false);
    draft.setCut('ab', 1);
    expect(isValid(draft)).toBe(true);
    const move = draft.serialize();
    expect(move.a_cuts).toEqual({ ab: 1 });
    expect(move.b_sides['a']).toHaveLength(2);
    expect(move.b_sides['']).toEqual([2]);
  });

  it('toggles individual split sides', () => {
    const draft = new CatDraft(reDemo);
    draft.setCut('ab', 1);
    draft.toggleSide('a', 0);
    expect(draft.serialize().b_sides['a']).toEqual([1, 2]);
  });

  it('treats the empty A-word as already cut', () => {
    const draft = new CatDraft({ ...reDemo, A: [''] });
    expect(isValid(draft)).toBe(true);
    expect(draft.serialize().a_cuts).toEqual({ '': 0 });
  });
});

describe('star draft', () => {
  it('mirrors the piece-set hitting condition', () => {
    const draft = new StarDraft(greSmall);
    draft.toggleCut('ab', 1);
    expect(isValid(draft)).toBe(false); // B' misses decompositions of aa
    draft.toggleChip('aa');
    expect(isValid(draft)).toBe(false); // (a, a) still avoids B'
    draft.toggleChip('a');
    expect(isValid(draft)).toBe(true);
    const move = draft.serialize();
    expect(move.a_cuts).toEqual({ ab: [1], b: [] });
    expect(move.b_prime).toEqual(['a', 'aa']);
  });

  it('suggests exactly the nonempty factors of B-words', () => {
    const draft = new StarDraft(greSmall);
    expect(draft.suggestedChips()).toEqual(['a', 'aa']);
  });

  it('flags the losing case with the empty word in B', () => {
    const draft = new StarDraft({ ...greSmall, B: [''] });
    expect(draft.problems().some((p) => p.message.includes('ε'))).toBe(true);
  });
});

describe('neg draft', () => {
  it('is never offered in re and checks gre headroom', () => {
    expect(isValid(new NegDraft(reDemo))).toBe(false);
    expect(isValid(new NegDraft(greSmall))).toBe(true);
    expect(isValid(new NegDraft({ ...greSmall, k: 1, s: 1 }))).toBe(false);
  });
});

describe('new game form', () => {
  it('mirrors the k >= s rule client-side', () => {
    const form = new NewGameForm();
    form.dialect = 'gre';
    form.k = 1;
    form.s = 2;
    expect(form.problems().some((p) => p.field === 's')).toBe(true);
    form.s = 1;
    expect(form.problems()).toEqual([]);
  });

  it('rejects words outside the alphabet', () => {
    const form = new NewGameForm();
    form.aText = 'abc';
    expect(form.problems().some((p) => p.field === 'A')).toBe(true);
  });

  it('parses epsilon tokens', () => {
    expect(NewGameForm.parseWords('a,ε,EPS')).toEqual(['a', '', '']);
  });

  it('builds the wire request', () => {
    const form = new NewGameForm();
    form.dialect = 'resf';
    form.s = 1;
    form.k = 7;
    const request = form.toRequest();
    expect(request.position.s).toBe(1);
    expect(request.position.dialect).toBe('resf');
    expect(request.engine).toEqual({ mode: 'solver' });
  });

  it('ships presets that validate', () => {
    for (const preset of PRESETS) {
      const form = new NewGameForm();
      preset.apply(form);
      expect(form.problems()).toEqual([]);
      expect(() => form.toRequest()).not.toThrow();
    }
  });
});
