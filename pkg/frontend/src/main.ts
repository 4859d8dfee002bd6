import { ChatApi } from "./api.js";
import { ChatApp } from "./app.js";

// ?api=http://host:port overrides the API origin (needed when the page is
// not served by the chat service itself); ?pack= selects the knowledge pack.
const params = new URLSearchParams(window.location.search);
const api = new ChatApi(params.get("api") ?? "");
const pack = params.get("pack") ?? "academic_regulation";

const root = document.getElementById("chat");
if (!root) throw new Error("missing #chat mount point");

const app = new ChatApp({ api, pack, root });
void app.start();
