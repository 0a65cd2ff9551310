import { defineConfig } from "vitest/config";

export default defineConfig({
  test: {
    include: ["tests/**/*.test.ts"],
    // the contract test boots the real ranking service in a subprocess
    testTimeout: 30_000,
    hookTimeout: 30_000,
  },
});
