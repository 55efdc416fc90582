import { ApiClient } from "./api.js";
import { App, grabElements } from "./app.js";

window.addEventListener("DOMContentLoaded", () => {
  const app = new App(new ApiClient(""), grabElements(document));
  void app.init();
});
