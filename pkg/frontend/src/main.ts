/** DOM wiring for the design explorer page. */

import { ApiClient } from "./api";
import { Explorer } from "./explorer";
import { base64ToArrayBuffer, parseBinaryStl, StlParseError } from "./stl";
import type { DesignDoc, GenerateResponse, PresetEntry } from "./types";
import { MeshViewer } from "./viewer";
import type { Violation } from "./validate";

const api = new ApiClient("");

interface ControlSpec {
  label: string;
  path: string;
  min: number;
  max: number;
  step: number;
}

const CONTROLS: ControlSpec[] = [
  { label: "Amplitude (mm)", path: "sections[0].midline.amplitude", min: 1, max: 60, step: 0.5 },
  { label: "Radius (mm)", path: "sections[0].midline.radius", min: 5, max: 80, step: 0.5 },
  { label: "Center offset", path: "sections[0].midline.center_offset", min: -1, max: 1, step: 0.05 },
  { label: "Peak/valley offset", path: "sections[0].midline.peak_valley_offset", min: -1, max: 1, step: 0.05 },
  { label: "Curve weight", path: "sections[0].midline.curve_weight", min: 0.2, max: 12, step: 0.1 },
  { label: "Wall thickness (mm)", path: "sections[0].thickness.max_thickness", min: 0.3, max: 2.5, step: 0.05 },
];

function el<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing element #${id}`);
  return node as T;
}

function fmt(value: number | null | undefined, digits = 2): string {
  return value === null || value === undefined ? "-" : value.toFixed(digits);
}

function downloadBlob(name: string, data: BlobPart, type: string): void {
  const url = URL.createObjectURL(new Blob([data], { type }));
  const a = document.createElement("a");
  a.href = url;
  a.download = name;
  a.click();
  URL.revokeObjectURL(url);
}

async function boot(): Promise<void> {
  const viewer = new MeshViewer(el("viewport"));
  const banner = el<HTMLDivElement>("banner");
  const metricsPanel = el<HTMLDivElement>("metrics");
  const controlsPanel = el<HTMLDivElement>("controls");
  const presetSelect = el<HTMLSelectElement>("preset");
  const exportStlBtn = el<HTMLButtonElement>("export-stl");
  const exportJsonBtn = el<HTMLButtonElement>("export-json");
  const regenerateBtn = el<HTMLButtonElement>("regenerate");
  const sectionToggle = el<HTMLInputElement>("section-toggle");
  const sectionTheta = el<HTMLInputElement>("section-theta");

  let presets: PresetEntry[] = [];
  try {
    presets = await api.presets();
  } catch {
    banner.textContent = "Cannot reach the design service. Start it with: teleact serve";
    banner.className = "banner error";
    return;
  }

  for (const p of presets) {
    const option = document.createElement("option");
    option.value = p.name;
    option.textContent = p.name;
    presetSelect.appendChild(option);
  }

  let lastResponse: GenerateResponse | null = null;
  let lastDesign: DesignDoc | null = null;

  const inputs = new Map<string, { slider: HTMLInputElement; error: HTMLSpanElement }>();

  const showViolations = (violations: Violation[]) => {
    for (const { error } of inputs.values()) error.textContent = "";
    for (const violation of violations) {
      const entry = inputs.get(violation.field);
      if (entry) entry.error.textContent = violation.message;
    }
    if (violations.length && !inputs.has(violations[0].field)) {
      banner.textContent = violations.map((v) => `${v.field}: ${v.message}`).join(" | ");
      banner.className = "banner error";
    } else if (!violations.length) {
      banner.className = "banner";
      banner.textContent = "";
    }
  };

  const explorer = new Explorer(api, presets[0].params, {
    onResult(response, design) {
      lastResponse = response;
      lastDesign = design;
      try {
        const stl = parseBinaryStl(base64ToArrayBuffer(response.mesh_stl_base64));
        viewer.showMesh(stl, response.bend);
      } catch (err) {
        // keep the previous scene, surface the diagnostic
        const msg = err instanceof StlParseError ? err.message : String(err);
        banner.textContent = `mesh parse failed: ${msg}`;
        banner.className = "banner error";
        return;
      }
      const d = response.diagnostics;
      const m = response.metrics;
      metricsPanel.innerHTML = [
        `<b>bend</b> ${fmt(response.bend.theta_deg)}&deg; (reach ${fmt(response.bend.x_mm)} mm, height ${fmt(response.bend.h_mm)} mm)`,
        `<b>axial ratio</b> ${fmt(response.bend.axial_ratio)}`,
        `<b>expansion</b> axial ${fmt(m.axial_expansion_ratio)} / radial ${fmt(m.radial_expansion_ratio, 3)}`,
        `<b>arc ratio</b> ${fmt(m.arc_length_ratio, 4)}`,
        `<b>volume</b> ${fmt(d.enclosed_volume_mm3, 0)} mm&sup3; <b>area</b> ${fmt(d.surface_area_mm2, 0)} mm&sup2;`,
        `<b>triangles</b> ${d.n_triangles} <b>watertight</b> ${d.watertight ? "yes" : "NO"}`,
      ].join("<br>");
      banner.className = "banner";
      banner.textContent = "";
    },
    onViolations: showViolations,
    onServerRejection(errors) {
      banner.innerHTML = `design rejected: ${errors.join(" | ")}`;
      banner.className = "banner error";
    },
    onNetworkError(message) {
      banner.innerHTML = `network failure: ${message} <button id="retry">retry</button>`;
      banner.className = "banner error";
      document.getElementById("retry")?.addEventListener("click", () => explorer.retry());
    },
    onBusyChange(busy) {
      regenerateBtn.disabled = busy;
      exportStlBtn.disabled = busy || !lastResponse;
      exportJsonBtn.disabled = busy || !lastResponse;
      document.body.classList.toggle("busy", busy);
    },
  });

  for (const spec of CONTROLS) {
    const row = document.createElement("div");
    row.className = "control-row";
    const label = document.createElement("label");
    label.textContent = spec.label;
    const slider = document.createElement("input");
    slider.type = "range";
    slider.min = String(spec.min);
    slider.max = String(spec.max);
    slider.step = String(spec.step);
    const number = document.createElement("input");
    number.type = "number";
    number.step = String(spec.step);
    const error = document.createElement("span");
    error.className = "inline-error";

    const apply = (raw: string) => {
      const value = Number(raw);
      slider.value = raw;
      number.value = raw;
      explorer.setParam(spec.path, value);
    };
    slider.addEventListener("input", () => apply(slider.value));
    number.addEventListener("change", () => apply(number.value));

    row.append(label, slider, number, error);
    controlsPanel.appendChild(row);
    inputs.set(spec.path, { slider, error });
  }

  const syncControls = (design: DesignDoc) => {
    for (const spec of CONTROLS) {
      const entry = inputs.get(spec.path);
      if (!entry) continue;
      const parts = spec.path.replace("sections[0].", "").split(".");
      const group = (design.sections[0] as any)[parts[0]];
      const value = group[parts[1]];
      entry.slider.value = String(value);
      (entry.slider.nextElementSibling as HTMLInputElement).value = String(value);
    }
  };

  presetSelect.addEventListener("change", () => {
    const preset = presets.find((p) => p.name === presetSelect.value);
    if (preset) {
      syncControls(preset.params);
      explorer.setDesign(preset.params);
    }
  });

  regenerateBtn.addEventListener("click", () => explorer.retry());
  sectionToggle.addEventListener("change", () =>
    viewer.setSectionPlane(sectionToggle.checked, Number(sectionTheta.value)),
  );
  sectionTheta.addEventListener("input", () =>
    viewer.setSectionPlane(sectionToggle.checked, Number(sectionTheta.value)),
  );

  exportStlBtn.addEventListener("click", () => {
    if (!lastResponse) return;
    downloadBlob("actuator.stl", base64ToArrayBuffer(lastResponse.mesh_stl_base64), "model/stl");
  });
  exportJsonBtn.addEventListener("click", () => {
    if (!lastResponse || !lastDesign) return;
    const payload = {
      design: lastDesign,
      design_digest: lastResponse.design_digest,
      diagnostics: lastResponse.diagnostics,
      bend: lastResponse.bend,
      metrics: lastResponse.metrics,
    };
    downloadBlob("actuator.metrics.json", JSON.stringify(payload, null, 2), "application/json");
  });

  // initial render
  syncControls(presets[0].params);
  explorer.setDesign(presets[0].params);
}

boot();
