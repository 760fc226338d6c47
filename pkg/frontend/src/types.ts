/** Design document types, mirroring the service's JSON schema. */

export type ThicknessMode = "constant" | "variable" | "collapsed" | "sbend";

export interface MidlineDoc {
  amplitude: number;
  radius: number;
  num_curves: number;
  center_offset: number;
  peak_valley_offset: number;
  curve_weight: number;
  period_scaling: number[];
  amplitude_scaling: number[];
}

export interface ThicknessDoc {
  max_thickness: number;
  thickness_factors: number[];
  mode: ThicknessMode;
  sbend_factors: number[] | null;
}

export interface SectionDoc {
  theta_deg: number;
  midline: MidlineDoc;
  thickness: ThicknessDoc;
}

export interface ResolutionDoc {
  samples_per_segment: number;
  contour_points: number;
  angular_step_deg: number;
  cell_mm: number | null;
}

export interface DesignDoc {
  sections: SectionDoc[];
  resolution: ResolutionDoc;
}

export interface BendDoc {
  x_mm: number;
  h_mm: number;
  theta_deg: number;
  axial_ratio: number | null;
}

export interface DiagnosticsDoc {
  watertight: boolean;
  enclosed_volume_mm3: number;
  surface_area_mm2: number;
  bbox_min_mm: number[];
  bbox_max_mm: number[];
  n_vertices: number;
  n_edges: number;
  n_triangles: number;
  euler_characteristic: number;
  boundary_edges: number;
  nonmanifold_edges: number;
}

export interface MetricsDoc {
  axial_expansion_ratio: number;
  radial_expansion_ratio: number;
  mesh_volume_mm3: number;
  arc_length_ratio: number;
  bend_theta_deg: number;
}

export interface GenerateResponse {
  mesh_stl_base64: string;
  design_digest: string;
  diagnostics: DiagnosticsDoc;
  bend: BendDoc;
  metrics: MetricsDoc;
}

export interface PresetEntry {
  name: string;
  params: DesignDoc;
}

export function cloneDesign(design: DesignDoc): DesignDoc {
  return JSON.parse(JSON.stringify(design)) as DesignDoc;
}
