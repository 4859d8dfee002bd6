// DOM wiring for the chat client: render the message list with origin badges
// and transition breadcrumbs, keep the context badge current, and hold one
// in-flight request per session.

import { ApiError, ChatApi } from "./api.js";
import {
  ChatViewState,
  initialState,
  sessionFailed,
  sessionStarted,
  turnCompleted,
  turnFailed,
  utteranceSent,
} from "./state.js";

export interface ChatAppOptions {
  api: ChatApi;
  pack: string;
  root: HTMLElement;
}

export class ChatApp {
  state: ChatViewState;
  private readonly api: ChatApi;
  private readonly root: HTMLElement;

  constructor(options: ChatAppOptions) {
    this.api = options.api;
    this.root = options.root;
    this.state = initialState(options.pack);
    this.render();
  }

  async start(): Promise<void> {
    this.update({ ...this.state, connection: "connecting", errorMessage: null });
    try {
      const info = await this.api.createSession(this.state.packName);
      this.update(sessionStarted(this.state, info));
    } catch (error) {
      this.update(sessionFailed(this.state, describe(error)));
    }
  }

  async send(text: string): Promise<void> {
    const utterance = text.trim();
    if (!utterance || this.state.inFlight || !this.state.sessionId) return;
    this.update(utteranceSent(this.state, utterance));
    try {
      const payload = await this.api.sendMessage(this.state.sessionId, utterance);
      this.update(turnCompleted(this.state, payload));
    } catch (error) {
      this.update(turnFailed(this.state, describe(error)));
    }
  }

  private update(state: ChatViewState): void {
    this.state = state;
    this.render();
  }

  private render(): void {
    const doc = this.root.ownerDocument;
    this.root.textContent = "";

    const header = el(doc, "header", "chat-header");
    header.append(
      el(doc, "span", "pack-name", this.state.packName),
      badge(doc, "context-badge", this.state.currentContext || "…"),
      badge(doc, `status status-${this.state.connection}`, this.state.connection),
    );
    this.root.append(header);

    if (this.state.connection === "error") {
      const banner = el(doc, "div", "error-banner", this.state.errorMessage ?? "không kết nối được");
      const retry = el(doc, "button", "retry", "thử lại") as HTMLButtonElement;
      retry.addEventListener("click", () => void this.start());
      banner.append(retry);
      this.root.append(banner);
    }

    const list = el(doc, "ul", "messages");
    for (const message of this.state.messages) {
      const item = el(doc, "li", `message ${message.speaker}`);
      if (message.origin) item.classList.add(`origin-${message.origin}`);
      if (message.cycleSuggested) item.classList.add("cycle-suggested");
      const bubble = el(doc, "div", "bubble", message.text);
      item.append(bubble);
      if (message.speaker === "agent") {
        const meta = el(doc, "div", "meta");
        meta.append(badge(doc, `origin origin-${message.origin}`, message.origin ?? ""));
        if (message.breadcrumb && message.breadcrumb.length > 1) {
          meta.append(el(doc, "span", "breadcrumb", message.breadcrumb.join(" → ")));
        }
        item.append(meta);
      }
      list.append(item);
    }
    this.root.append(list);

    if (this.state.errorMessage && this.state.connection !== "error") {
      this.root.append(el(doc, "div", "turn-error", this.state.errorMessage));
    }

    const form = el(doc, "form", "composer") as HTMLFormElement;
    const input = el(doc, "input", "utterance") as HTMLInputElement;
    input.type = "text";
    input.placeholder = "Nhập câu hỏi…";
    input.autocomplete = "off";
    input.disabled = this.state.inFlight || this.state.connection !== "ready";
    const send = el(doc, "button", "send", "gửi") as HTMLButtonElement;
    send.type = "submit";
    send.disabled = input.disabled;
    const syncSendDisabled = () => {
      send.disabled = input.disabled || input.value.trim() === "";
    };
    syncSendDisabled();
    input.addEventListener("input", syncSendDisabled);
    form.addEventListener("submit", (event) => {
      event.preventDefault();
      const text = input.value;
      input.value = "";
      void this.send(text);
    });
    form.append(input, send);
    this.root.append(form);
    if (!input.disabled) input.focus();
  }
}

function el(doc: Document, tag: string, className: string, text?: string): HTMLElement {
  const node = doc.createElement(tag);
  node.className = className;
  if (text !== undefined) node.textContent = text;
  return node;
}

function badge(doc: Document, className: string, text: string): HTMLElement {
  return el(doc, "span", `badge ${className}`, text);
}

function describe(error: unknown): string {
  if (error instanceof ApiError) return `lỗi ${error.status}: ${error.message}`;
  if (error instanceof Error) return error.message;
  return String(error);
}
