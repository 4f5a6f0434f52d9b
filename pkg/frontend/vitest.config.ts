import { defineConfig } from "vitest/config";

export default defineConfig({
  resolve: {
    // sources import "./x.js" (native-ESM style); strip so vite finds the .ts files
    alias: [{ find: /^(\.{1,2}\/.*)\.js$/, replacement: "$1" }],
  },
  test: {
    include: ["tests/**/*.test.ts"],
    testTimeout: 30000,
    hookTimeout: 30000,
  },
});
