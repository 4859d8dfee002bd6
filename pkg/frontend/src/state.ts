// Pure view-state transitions. Message order equals turn order and the
// current-context badge always equals the last turn's final transition (or
// the session default before any turn) — the server payload is the source of
// truth and these functions never invent state.

import type { Origin, SessionInfo, TurnPayload } from "./api.js";

export interface ChatMessage {
  speaker: "user" | "agent";
  text: string;
  origin?: Origin;
  matchedContext?: string | null;
  breadcrumb?: string[];
  cycleSuggested?: boolean;
}

export type Connection = "connecting" | "ready" | "error";

export interface ChatViewState {
  sessionId: string | null;
  packName: string;
  currentContext: string;
  messages: ChatMessage[];
  connection: Connection;
  errorMessage: string | null;
  inFlight: boolean;
}

export function initialState(packName: string): ChatViewState {
  return {
    sessionId: null,
    packName,
    currentContext: "",
    messages: [],
    connection: "connecting",
    errorMessage: null,
    inFlight: false,
  };
}

export function sessionStarted(state: ChatViewState, info: SessionInfo): ChatViewState {
  return {
    ...state,
    sessionId: info.session_id,
    packName: info.pack_name,
    currentContext: info.current_context,
    connection: "ready",
    errorMessage: null,
  };
}

export function sessionFailed(state: ChatViewState, message: string): ChatViewState {
  return { ...state, connection: "error", errorMessage: message };
}

export function utteranceSent(state: ChatViewState, text: string): ChatViewState {
  return {
    ...state,
    inFlight: true,
    errorMessage: null,
    messages: [...state.messages, { speaker: "user", text }],
  };
}

export function turnCompleted(state: ChatViewState, payload: TurnPayload): ChatViewState {
  const breadcrumb = [state.currentContext, ...payload.transitions];
  return {
    ...state,
    inFlight: false,
    currentContext: payload.current_context,
    messages: [
      ...state.messages,
      {
        speaker: "agent",
        text: payload.response,
        origin: payload.origin,
        matchedContext: payload.matched_context,
        breadcrumb,
        cycleSuggested: payload.cycle_suggested,
      },
    ],
  };
}

export function turnFailed(state: ChatViewState, message: string): ChatViewState {
  // keep the user's bubble; surface the error inline so the input can retry
  return { ...state, inFlight: false, errorMessage: message };
}
