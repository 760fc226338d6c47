/** Client-side mirror of the service's design invariants.
 *
 * Any design this validator accepts must pass the server's schema checks;
 * only semantic infeasibility (e.g. bend-model domain errors) may still be
 * rejected server-side.
 */

import type { DesignDoc, MidlineDoc, ThicknessDoc } from "./types";

export interface Violation {
  /** dotted path of the offending control, e.g. "sections[0].midline.amplitude" */
  field: string;
  message: string;
}

function checkMidline(m: MidlineDoc, where: string, out: Violation[]): void {
  if (!(m.amplitude > 0)) {
    out.push({ field: `${where}.amplitude`, message: "amplitude must be > 0" });
  }
  if (!(m.radius > 0)) {
    out.push({ field: `${where}.radius`, message: "radius must be > 0" });
  }
  if (!Number.isInteger(m.num_curves) || m.num_curves < 1) {
    out.push({ field: `${where}.num_curves`, message: "num_curves must be a positive integer" });
  }
  if (!(m.center_offset >= -1 && m.center_offset <= 1)) {
    out.push({ field: `${where}.center_offset`, message: "center_offset must be in [-1, 1]" });
  }
  if (!(m.peak_valley_offset >= -1 && m.peak_valley_offset <= 1)) {
    out.push({ field: `${where}.peak_valley_offset`, message: "peak_valley_offset must be in [-1, 1]" });
  }
  if (!(m.curve_weight > 0)) {
    out.push({ field: `${where}.curve_weight`, message: "curve_weight must be > 0" });
  }
  for (const key of ["period_scaling", "amplitude_scaling"] as const) {
    const values = m[key];
    if (values.length !== m.num_curves) {
      out.push({ field: `${where}.${key}`, message: `${key} needs exactly num_curves entries` });
    }
    if (values.some((v) => !(v > 0))) {
      out.push({ field: `${where}.${key}`, message: `${key} entries must be > 0` });
    }
  }
}

function checkThickness(t: ThicknessDoc, where: string, out: Violation[]): void {
  if (!(t.max_thickness > 0)) {
    out.push({ field: `${where}.max_thickness`, message: "max_thickness must be > 0" });
  }
  if (t.thickness_factors.length !== 3 || t.thickness_factors.some((f) => !(f > 0 && f <= 1))) {
    out.push({ field: `${where}.thickness_factors`, message: "three factors in (0, 1] required" });
  }
  if (t.mode === "sbend") {
    if (!t.sbend_factors || t.sbend_factors.length !== 3 || t.sbend_factors.some((f) => !(f > 0 && f <= 1))) {
      out.push({ field: `${where}.sbend_factors`, message: "sbend mode needs three factors in (0, 1]" });
    }
  } else if (t.sbend_factors !== null && t.sbend_factors !== undefined) {
    out.push({ field: `${where}.sbend_factors`, message: "only allowed in sbend mode" });
  }
}

export function validateDesign(design: DesignDoc): Violation[] {
  const out: Violation[] = [];
  if (!design.sections.length) {
    out.push({ field: "sections", message: "at least one section required" });
    return out;
  }
  let prevTheta = -Infinity;
  design.sections.forEach((sec, i) => {
    const where = `sections[${i}]`;
    if (!(sec.theta_deg >= 0 && sec.theta_deg < 360)) {
      out.push({ field: `${where}.theta_deg`, message: "theta must be in [0, 360)" });
    }
    if (!(sec.theta_deg > prevTheta)) {
      out.push({ field: `${where}.theta_deg`, message: "thetas must be strictly increasing" });
    }
    prevTheta = sec.theta_deg;
    checkMidline(sec.midline, `${where}.midline`, out);
    checkThickness(sec.thickness, `${where}.thickness`, out);
  });

  const first = design.sections[0];
  design.sections.slice(1).forEach((sec, i) => {
    if (sec.midline.num_curves !== first.midline.num_curves) {
      out.push({
        field: `sections[${i + 1}].midline.num_curves`,
        message: "all sections must share num_curves",
      });
    }
    if (sec.thickness.mode !== first.thickness.mode) {
      out.push({
        field: `sections[${i + 1}].thickness.mode`,
        message: "all sections must share the thickness mode",
      });
    }
  });

  const r = design.resolution;
  if (!Number.isInteger(r.samples_per_segment) || r.samples_per_segment < 8) {
    out.push({ field: "resolution.samples_per_segment", message: "integer >= 8 required" });
  }
  if (!Number.isInteger(r.contour_points) || r.contour_points < 16) {
    out.push({ field: "resolution.contour_points", message: "integer >= 16 required" });
  }
  if (!(r.angular_step_deg > 0) || Math.abs(360 / r.angular_step_deg - Math.round(360 / r.angular_step_deg)) > 1e-9) {
    out.push({ field: "resolution.angular_step_deg", message: "must be > 0 and divide 360" });
  }
  if (r.cell_mm !== null && !(r.cell_mm > 0)) {
    out.push({ field: "resolution.cell_mm", message: "must be > 0 when set" });
  }
  return out;
}
