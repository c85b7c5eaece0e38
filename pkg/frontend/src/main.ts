import { ApiClient } from "./api.js";
import { App } from "./app.js";

const params = new URLSearchParams(window.location.search);
const baseUrl = params.get("api") ?? "http://127.0.0.1:8111";

const root = document.getElementById("app");
if (!root) throw new Error("missing #app container");

new App(root, new ApiClient(baseUrl));
