// Typed client for the chat service HTTP API. The UI never mutates
// conversational state locally: every turn is one round-trip through here.

export type Origin = "qa" | "agent" | "fallback";

export interface SessionInfo {
  session_id: string;
  pack_name: string;
  created_at: string;
  current_context: string;
}

export interface TurnPayload {
  response: string;
  origin: Origin;
  matched_context: string | null;
  transitions: string[];
  cycle_suggested: boolean;
  turn: number;
  current_context: string;
}

export class ApiError extends Error {
  constructor(readonly status: number, message: string) {
    super(message);
  }
}

async function expectJson<T>(response: Response): Promise<T> {
  if (!response.ok) {
    let detail = response.statusText;
    try {
      const body = await response.json();
      if (body && typeof body.detail === "string") detail = body.detail;
    } catch {
      // non-JSON error body; keep the status text
    }
    throw new ApiError(response.status, detail);
  }
  return response.json() as Promise<T>;
}

export class ChatApi {
  constructor(readonly baseUrl: string = "") {}

  private url(path: string): string {
    return `${this.baseUrl}${path}`;
  }

  async createSession(pack: string): Promise<SessionInfo> {
    const response = await fetch(this.url("/api/sessions"), {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify({ pack }),
    });
    return expectJson<SessionInfo>(response);
  }

  async sendMessage(sessionId: string, utterance: string): Promise<TurnPayload> {
    const response = await fetch(
      this.url(`/api/sessions/${encodeURIComponent(sessionId)}/messages`),
      {
        method: "POST",
        headers: { "Content-Type": "application/json" },
        body: JSON.stringify({ utterance }),
      },
    );
    return expectJson<TurnPayload>(response);
  }

  async fetchTranscript(sessionId: string): Promise<unknown[]> {
    const response = await fetch(
      this.url(`/api/sessions/${encodeURIComponent(sessionId)}`),
    );
    return expectJson<unknown[]>(response);
  }
}
