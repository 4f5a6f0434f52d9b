import { AdvisorApp } from "./app.js";

document.addEventListener("DOMContentLoaded", () => {
  new AdvisorApp();
});
