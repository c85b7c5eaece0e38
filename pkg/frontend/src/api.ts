/**
 * Typed client for the leafmatch session service.
 *
 * Every number shown in the UI comes out of these response payloads; the
 * client never computes gamma, impedance, or dB values itself.
 */

export interface GammaPoint {
  real: number;
  imag: number;
}

export type ElementKind = "inductor" | "capacitor" | "resistor";
export type Placement = "series" | "shunt";

export interface ElementSpec {
  kind: ElementKind;
  placement: Placement;
  value: number;
  quality_factor?: number | null;
}

export interface TrajectoryArc {
  element_index: number;
  element: ElementSpec;
  points: GammaPoint[];
}

export interface MatchSolution {
  elements: ElementSpec[];
  topology: string;
  achieved_gamma: GammaPoint;
  achieved_s11_db: number;
}

export interface SessionState {
  id: string;
  z0_ohms: number;
  f0_hz: number;
  load: Record<string, unknown>;
  elements: ElementSpec[];
  gamma: GammaPoint;
  s11_db: number;
  arcs: TrajectoryArc[];
  suggestions: MatchSolution[];
  created: string;
  updated: string;
}

export interface SweepPoint {
  frequency_hz: number;
  gamma: GammaPoint;
  s11_db: number;
}

export interface SweepResult {
  points: SweepPoint[];
}

export interface NetworkDoc {
  elements: ElementSpec[];
}

export interface SearchReport {
  best_network: NetworkDoc;
  best_s11_db: number;
  candidates_evaluated: number;
  runner_ups: { network: NetworkDoc; s11_db: number }[];
}

export type LoadSpec =
  | { type: "constant"; resistance: number; reactance: number }
  | { type: "resonator"; r_series_ohms: number; l_henries: number; c_farads: number }
  | { type: "s1p"; content: string };

export class ApiError extends Error {
  constructor(
    public status: number,
    public code: string,
    message: string,
    public line?: number,
  ) {
    super(message);
  }
}

export type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

export class ApiClient {
  constructor(
    private baseUrl: string,
    private fetchFn: FetchLike = (input, init) => fetch(input, init),
  ) {}

  private async request<T>(path: string, init?: RequestInit): Promise<T> {
    const response = await this.fetchFn(this.baseUrl + path, init);
    const body = await response.json();
    if (!response.ok) {
      const err = (body as { error?: { code?: string; message?: string; line?: number } }).error;
      throw new ApiError(
        response.status,
        err?.code ?? "error",
        err?.message ?? response.statusText,
        err?.line,
      );
    }
    return body as T;
  }

  private post<T>(path: string, payload: unknown): Promise<T> {
    return this.request<T>(path, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify(payload),
    });
  }

  createSession(f0Hz: number, load: LoadSpec, z0Ohms?: number) {
    const body: Record<string, unknown> = { f0: f0Hz, load };
    if (z0Ohms !== undefined) body.z0 = z0Ohms;
    return this.post<{ id: string; state: SessionState }>("/sessions", body);
  }

  getState(id: string) {
    return this.request<SessionState>(`/sessions/${id}`);
  }

  pushElement(id: string, element: ElementSpec) {
    return this.post<SessionState>(`/sessions/${id}/elements`, element);
  }

  popElement(id: string) {
    return this.request<SessionState>(`/sessions/${id}/elements/last`, { method: "DELETE" });
  }

  suggest(id: string) {
    return this.request<MatchSolution[]>(`/sessions/${id}/suggest`);
  }

  sweep(id: string, fromHz?: number, toHz?: number, points?: number) {
    const params = new URLSearchParams();
    if (fromHz !== undefined) params.set("from", String(fromHz));
    if (toHz !== undefined) params.set("to", String(toHz));
    if (points !== undefined) params.set("points", String(points));
    const query = params.toString();
    return this.request<SweepResult>(`/sessions/${id}/sweep${query ? "?" + query : ""}`);
  }

  discretize(id: string, series: string, k: number) {
    return this.post<SearchReport>(`/sessions/${id}/discretize`, { series, k });
  }
}
