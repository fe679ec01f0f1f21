/** New-game form model with client-side validation mirroring the server. */

import { CreateSessionRequest, Dialect, Position, Role } from './types';

export interface FormProblem {
  field: string;
  message: string;
}

export class NewGameForm {
  dialect: Dialect = 're';
  k = 3;
  s: number | null = null;
  alphabet = 'ab';
  aText = 'ab';
  bText = 'a,b,ε';
  role: Role = 's';
  engineMode: 'solver' | 'expr' = 'solver';
  engineExpr = '';

  static parseWords(text: string): string[] {
    if (text.trim() === '') return [];
    return text.split(',').map((t) => {
      const w = t.trim();
      return w === 'ε' || w === 'EPS' ? '' : w;
    });
  }

  problems(): FormProblem[] {
    const out: FormProblem[] = [];
    const symbols = [...this.alphabet];
    if (symbols.length === 0) {
      out.push({ field: 'alphabet', message: 'alphabet must not be empty' });
    }
    if (new Set(symbols).size !== symbols.length) {
      out.push({ field: 'alphabet', message: 'alphabet symbols must be distinct' });
    }
    if (!Number.isInteger(this.k) || this.k < 0) {
      out.push({ field: 'k', message: 'size budget must be a natural number' });
    }
    if (this.dialect === 're') {
      if (this.s !== null) {
        out.push({ field: 's', message: 'the RE game has no star budget' });
      }
    } else {
      if (this.s === null || this.s < 0) {
        out.push({ field: 's', message: 'this game needs a star budget' });
      } else if (this.s > this.k) {
        out.push({ field: 's', message: 'star budget cannot exceed the size budget' });
      }
    }
    const alphabetSet = new Set(symbols);
    for (const [field, text] of [['A', this.aText], ['B', this.bText]] as const) {
      for (const w of NewGameForm.parseWords(text)) {
        for (const c of w) {
          if (!alphabetSet.has(c)) {
            out.push({ field, message: `word ${w} uses ${c}, not in the alphabet` });
          }
        }
      }
    }
    if (this.engineMode === 'expr' && this.engineExpr.trim() === '') {
      out.push({ field: 'engineExpr', message: 'give the engine an expression' });
    }
    return out;
  }

  toRequest(): CreateSessionRequest {
    const problems = this.problems();
    if (problems.length > 0) {
      throw new Error(`form not submittable: ${problems[0].message}`);
    }
    const position: Position = {
      dialect: this.dialect,
      k: this.k,
      alphabet: [...this.alphabet],
      A: NewGameForm.parseWords(this.aText),
      B: NewGameForm.parseWords(this.bText),
    };
    if (this.dialect !== 're' && this.s !== null) {
      position.s = this.s;
    }
    return {
      position,
      human_role: this.role,
      engine: this.engineMode === 'expr'
        ? { mode: 'expr', expr: this.engineExpr }
        : { mode: 'solver' },
    };
  }
}

export interface Preset {
  name: string;
  description: string;
  apply(form: NewGameForm): void;
}

export const PRESETS: Preset[] = [
  {
    name: 'Catenation demo: ab vs {a, b, ε}',
    description: 'Size budget 3; the engine follows the expression ab and '
      + 'wins whichever branches you pick.',
    apply(form) {
      form.dialect = 're';
      form.k = 3;
      form.s = null;
      form.alphabet = 'ab';
      form.aText = 'ab';
      form.bText = 'a,b,ε';
      form.role = 'd';
      form.engineMode = 'expr';
      form.engineExpr = 'ab';
    },
  },
  {
    name: 'One star is not enough',
    description: 'The two witness words with a single even chain each cannot '
      + 'be separated from the even-chain complement sample within size 7 '
      + 'and one star; play S and watch the engine refute you.',
    apply(form) {
      form.dialect = 'resf';
      form.k = 7;
      form.s = 1;
      form.alphabet = 'ab';
      form.aText = 'aaaabbbbb,aaaaabbbb';
      form.bText = 'ab,ba,aaaaabbbbb';
      form.role = 's';
      form.engineMode = 'solver';
      form.engineExpr = '';
    },
  },
  {
    name: 'Complement warm-up',
    description: 'Separate everything from nothing: one complement move and '
      + 'one empty-language move win.',
    apply(form) {
      form.dialect = 'gre';
      form.k = 2;
      form.s = 0;
      form.alphabet = 'ab';
      form.aText = 'a,b,ε,aa';
      form.bText = '';
      form.role = 's';
      form.engineMode = 'solver';
      form.engineExpr = '';
    },
  },
];
