/** End-to-end check against the real Python service when it is available:
 * spawns `probe-budget serve` on an ephemeral port and drives a session
 * through the actual HTTP stack. Skipped when python3 (with the package
 * installed) is missing.
 */

import { spawn, spawnSync } from "node:child_process";
import type { ChildProcess } from "node:child_process";
import { afterAll, beforeAll, describe, expect, it } from "vitest";

import { SessionApi } from "../src/api.js";
import { AdvisorController } from "../src/controller.js";

function pythonAvailable(): boolean {
  const probe = spawnSync("python3", ["-c", "import probe_budget"], {
    timeout: 20000,
  });
  return probe.status === 0;
}

const available = pythonAvailable();

describe.skipIf(!available)("against the live service", () => {
  let child: ChildProcess;
  let base = "";

  beforeAll(async () => {
    child = spawn("python3", ["-m", "probe_budget.cli", "serve", "--port", "0"], {
      stdio: ["ignore", "pipe", "pipe"],
    });
    base = await new Promise<string>((resolve, reject) => {
      const timer = setTimeout(() => reject(new Error("service did not start")), 25000);
      let buffer = "";
      child.stdout!.on("data", (chunk: Buffer) => {
        buffer += chunk.toString();
        const match = buffer.match(/serving on (http:\/\/[^/]+)\//);
        if (match) {
          clearTimeout(timer);
          resolve(match[1]);
        }
      });
      child.on("exit", (code) => reject(new Error(`service exited early (${code})`)));
    });
  });

  afterAll(() => {
    child?.kill();
  });

  it("runs the 100/2 session over real HTTP", async () => {
    const controller = new AdvisorController(new SessionApi(base));
    await controller.createSession("100", "2");
    expect(controller.state.phase).toBe("active");
    expect(controller.state.displayedProbe).toBe(14);

    await controller.reportOutcome("broke");
    expect(controller.state.displayedProbe).toBe(1);

    for (let i = 0; i < 12; i += 1) await controller.reportOutcome("survived");
    await controller.reportOutcome("broke");

    expect(controller.state.phase).toBe("done");
    expect(controller.state.resultText).toBe("lowest breaking floor: 13");
    await controller.reset();
    expect(controller.state.phase).toBe("setup");
  });

  it("surfaces infeasible instances from the real service", async () => {
    const controller = new AdvisorController(new SessionApi(base));
    await controller.createSession("5", "0");
    expect(controller.state.formError).toBe("infeasible: 0 balls, >0 floors");
  });

  it("resolves an empty building immediately", async () => {
    const controller = new AdvisorController(new SessionApi(base));
    await controller.createSession("0", "3");
    expect(controller.state.phase).toBe("done");
    expect(controller.state.resultText).toBe("no floor breaks");
  });
});
