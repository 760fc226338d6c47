/** Explorer state machine: debounced regeneration with stale-response discard.
 *
 * Every accepted parameter edit schedules one debounced POST /api/generate.
 * Requests carry a monotonically increasing sequence number; a response is
 * dropped unless it is newer than the one currently displayed, so the shown
 * mesh always corresponds to the shown parameters.  Invalid edits never
 * reach the network: the client-side validator mirrors the service's
 * invariants and reports violations inline instead.
 */

import { ApiClient, ApiError } from "./api";
import type { DesignDoc, GenerateResponse } from "./types";
import { cloneDesign } from "./types";
import { validateDesign, type Violation } from "./validate";

export interface ExplorerEvents {
  /** a fresh (non-stale) result arrived; design is the snapshot that produced it */
  onResult(response: GenerateResponse, design: DesignDoc): void;
  /** client-side validation failed; no request was sent */
  onViolations(violations: Violation[]): void;
  /** server rejected the design (422) with its own error list */
  onServerRejection(errors: string[]): void;
  /** transport failure; the previous result stays displayed */
  onNetworkError(message: string): void;
  /** number of outstanding requests changed */
  onBusyChange(busy: boolean): void;
}

export const DEBOUNCE_MS = 300;

export class Explorer {
  private design: DesignDoc;
  private seq = 0;
  private displayedSeq = 0;
  private inFlight = 0;
  private timer: ReturnType<typeof setTimeout> | null = null;

  constructor(
    private api: ApiClient,
    initial: DesignDoc,
    private events: ExplorerEvents,
    private debounceMs: number = DEBOUNCE_MS,
  ) {
    this.design = cloneDesign(initial);
  }

  get currentDesign(): DesignDoc {
    return cloneDesign(this.design);
  }

  get busy(): boolean {
    return this.inFlight > 0;
  }

  /** Apply one field edit; schedules a debounced regenerate when valid. */
  setParam(path: string, value: number | string | null): Violation[] {
    const candidate = cloneDesign(this.design);
    setByPath(candidate, path, value);
    const violations = validateDesign(candidate);
    if (violations.length > 0) {
      this.cancelPending();
      this.events.onViolations(violations);
      return violations;
    }
    this.design = candidate;
    this.events.onViolations([]);
    this.schedule();
    return [];
  }

  /** Replace the whole design (preset selection); submits immediately when valid. */
  setDesign(design: DesignDoc): Violation[] {
    const candidate = cloneDesign(design);
    const violations = validateDesign(candidate);
    if (violations.length > 0) {
      this.events.onViolations(violations);
      return violations;
    }
    this.design = candidate;
    this.events.onViolations([]);
    this.cancelPending();
    void this.submit();
    return [];
  }

  /** Resubmit the current design (retry after a network failure). */
  retry(): void {
    this.cancelPending();
    void this.submit();
  }

  /** Flush a pending debounced submit immediately (mostly for tests). */
  flush(): void {
    if (this.timer !== null) {
      this.cancelPending();
      void this.submit();
    }
  }

  private cancelPending(): void {
    if (this.timer !== null) {
      clearTimeout(this.timer);
      this.timer = null;
    }
  }

  private schedule(): void {
    this.cancelPending();
    this.timer = setTimeout(() => {
      this.timer = null;
      void this.submit();
    }, this.debounceMs);
  }

  private async submit(): Promise<void> {
    const id = ++this.seq;
    const snapshot = cloneDesign(this.design);
    this.inFlight += 1;
    if (this.inFlight === 1) this.events.onBusyChange(true);
    try {
      const response = await this.api.generate(snapshot);
      if (id > this.displayedSeq) {
        this.displayedSeq = id;
        this.events.onResult(response, snapshot);
      }
      // older than the displayed response: stale, dropped
    } catch (err) {
      if (id > this.displayedSeq) {
        if (err instanceof ApiError && err.status === 422) {
          this.events.onServerRejection(err.errors);
        } else {
          this.events.onNetworkError(err instanceof Error ? err.message : String(err));
        }
      }
    } finally {
      this.inFlight -= 1;
      if (this.inFlight === 0) this.events.onBusyChange(false);
    }
  }
}

/** Set a design field addressed as e.g. "sections[0].midline.amplitude". */
export function setByPath(design: DesignDoc, path: string, value: unknown): void {
  const parts = path.split(".").flatMap((part) => {
    const match = part.match(/^(\w+)\[(\d+)\]$/);
    return match ? [match[1], Number(match[2])] : [part];
  });
  let node: any = design;
  for (const key of parts.slice(0, -1)) {
    node = node[key];
    if (node === undefined) {
      throw new Error(`unknown design path: ${path}`);
    }
  }
  const leaf = parts[parts.length - 1];
  if (!(leaf in node)) {
    throw new Error(`unknown design field: ${path}`);
  }
  node[leaf] = value;
}
