import { defineConfig } from "vitest/config";

export default defineConfig({
  test: {
    environment: "node",
    include: ["test/**/*.test.ts"],
    // the e2e file owns a spawned service on a fixed port
    fileParallelism: false,
    testTimeout: 30_000,
    hookTimeout: 60_000,
  },
});
