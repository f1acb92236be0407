/// <reference types="vitest/config" />
import { defineConfig } from "vite";

export default defineConfig({
  server: {
    // during development the Python service runs separately
    proxy: { "/api": "http://127.0.0.1:8787" },
  },
  build: { outDir: "dist" },
  test: { environment: "node" },
});
