import { defineConfig } from "vitest/config";

export default defineConfig({
  test: {
    include: ["test/**/*.test.ts"],
    environment: "node",
    // The round-trip suite spawns a real session host and waits for it to bind.
    testTimeout: 30000,
    hookTimeout: 30000,
  },
});
