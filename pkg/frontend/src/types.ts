/** Wire types mirroring the game service's JSON bodies. */

export type Dialect = 're' | 'resf' | 'gre';
export type Role = 's' | 'd';

export interface Position {
  dialect: Dialect;
  k: number;
  s?: number;
  alphabet: string[];
  A: string[];
  B: string[];
}

export interface AtomMove {
  type: 'atom';
  symbol: string; // '' is the empty word
}

export interface EmptyMove {
  type: 'empty';
}

export interface UnionMove {
  type: 'union';
  a1: string[];
  a2: string[];
  k1: number;
  k2: number;
  s1?: number | null;
  s2?: number | null;
}

export interface CatMove {
  type: 'cat';
  a_cuts: Record<string, number>;
  b_sides: Record<string, number[]>;
  k1: number;
  k2: number;
  s1?: number | null;
  s2?: number | null;
}

export interface StarMove {
  type: 'star';
  a_cuts: Record<string, number[]>;
  b_prime: string[];
}

export interface NegMove {
  type: 'neg';
}

export type Move = AtomMove | EmptyMove | UnionMove | CatMove | StarMove | NegMove;

export interface EngineConfig {
  mode: 'solver' | 'expr';
  expr?: string;
}

export interface HistoryEvent {
  actor: 'human' | 'engine';
  kind: 'move' | 'choice';
  move?: Move;
  branch?: number;
}

export type SessionStatus = 'ongoing' | 'won_by_s' | 'won_by_d';

export interface SessionState {
  id: string;
  human_role: Role;
  engine: EngineConfig;
  status: SessionStatus;
  awaiting: 'human_move' | 'human_choice' | null;
  initial_position: Position;
  position: Position;
  history: HistoryEvent[];
  move_trace: string[];
  pending_move?: Move;
  pending_children?: [Position, Position];
  winner?: 'S' | 'D';
}

export interface Hint {
  kind: 'move' | 'choice' | 'wait';
  value: 'S' | 'D';
  move?: Move | null;
  branch?: number;
  note?: string;
}

export interface ApiError {
  code: string;
  message: string;
  violation?: string;
}

export interface CreateSessionRequest {
  position: Position;
  human_role: Role;
  engine: EngineConfig;
}

export interface ValidateResult {
  ok: boolean;
  violation: string | null;
}

export const EPSILON_LABEL = 'ε';

export function showWord(w: string): string {
  return w === '' ? EPSILON_LABEL : w;
}
