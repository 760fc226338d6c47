/** Thin typed client for the design service endpoints. */

import type { BendDoc, DesignDoc, GenerateResponse, PresetEntry } from "./types";

export class ApiError extends Error {
  constructor(
    public status: number,
    public errors: string[],
  ) {
    super(errors.join("; ") || `HTTP ${status}`);
  }
}

export type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

export class ApiClient {
  constructor(
    private baseUrl: string = "",
    private fetchImpl: FetchLike = (...args) => fetch(...args),
  ) {}

  private async post<T>(path: string, body: unknown): Promise<T> {
    const response = await this.fetchImpl(this.baseUrl + path, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify(body),
    });
    const payload = await response.json();
    if (!response.ok) {
      throw new ApiError(response.status, (payload?.errors as string[]) ?? []);
    }
    return payload as T;
  }

  async generate(design: DesignDoc): Promise<GenerateResponse> {
    return this.post<GenerateResponse>("/api/generate", design);
  }

  async bend(body: { s0: number; s1: number; r: number; h0?: number }): Promise<BendDoc> {
    return this.post<BendDoc>("/api/bend", body);
  }

  async presets(): Promise<PresetEntry[]> {
    const response = await this.fetchImpl(this.baseUrl + "/api/presets");
    if (!response.ok) {
      throw new ApiError(response.status, [`failed to load presets`]);
    }
    const payload = await response.json();
    return payload.presets as PresetEntry[];
  }

  async health(): Promise<boolean> {
    try {
      const response = await this.fetchImpl(this.baseUrl + "/healthz");
      return response.ok;
    } catch {
      return false;
    }
  }
}
