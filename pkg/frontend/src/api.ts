/** Thin fetch client for the game service; the single source of rule truth. */

import {
  ApiError, CreateSessionRequest, Hint, Move, SessionState, ValidateResult,
} from './types';

export class ServiceError extends Error {
  readonly code: string;
  readonly violation?: string;
  readonly status: number;

  constructor(status: number, body: ApiError) {
    super(body.message);
    this.status = status;
    this.code = body.code;
    this.violation = body.violation;
  }
}

export class GameApi {
  constructor(readonly baseUrl: string) {}

  private async request<T>(method: string, path: string, body?: unknown): Promise<T> {
    const response = await fetch(this.baseUrl + path, {
      method,
      headers: body === undefined ? {} : { 'Content-Type': 'application/json' },
      body: body === undefined ? undefined : JSON.stringify(body),
    });
    const payload = await response.json();
    if (!response.ok) {
      throw new ServiceError(response.status, payload as ApiError);
    }
    return payload as T;
  }

  createSession(request: CreateSessionRequest): Promise<SessionState> {
    return this.request('POST', '/sessions', request);
  }

  getSession(id: string): Promise<SessionState> {
    return this.request('GET', `/sessions/${id}`);
  }

  deleteSession(id: string): Promise<{ deleted: string }> {
    return this.request('DELETE', `/sessions/${id}`);
  }

  submitMove(id: string, move: Move): Promise<SessionState> {
    return this.request('POST', `/sessions/${id}/moves`, move);
  }

  submitChoice(id: string, branch: 1 | 2): Promise<SessionState> {
    return this.request('POST', `/sessions/${id}/choice`, { branch });
  }

  hint(id: string): Promise<Hint> {
    return this.request('GET', `/sessions/${id}/hint`);
  }

  validateMove(id: string, move: Move): Promise<ValidateResult> {
    return this.request('POST', `/sessions/${id}/validate`, move);
  }
}
