/** three.js scene: orbit/zoom mesh view, section-plane outline, bend arrow. */

import * as THREE from "three";
import { OrbitControls } from "three/examples/jsm/controls/OrbitControls.js";

import type { ParsedStl } from "./stl";
import { sectionOutline } from "./stl";
import type { BendDoc } from "./types";

export class MeshViewer {
  private scene = new THREE.Scene();
  private camera: THREE.PerspectiveCamera;
  private renderer: THREE.WebGLRenderer;
  private controls: OrbitControls;
  private meshGroup = new THREE.Group();
  private overlayGroup = new THREE.Group();
  private currentStl: ParsedStl | null = null;
  private sectionVisible = false;
  private sectionTheta = 0;
  private bend: BendDoc | null = null;

  constructor(container: HTMLElement) {
    this.scene.background = new THREE.Color(0x10141a);
    this.camera = new THREE.PerspectiveCamera(45, 1, 0.1, 5000);
    this.camera.position.set(90, -90, 70);
    this.camera.up.set(0, 0, 1);

    this.renderer = new THREE.WebGLRenderer({ antialias: true });
    container.appendChild(this.renderer.domElement);

    this.controls = new OrbitControls(this.camera, this.renderer.domElement);
    this.controls.enableDamping = true;

    const key = new THREE.DirectionalLight(0xffffff, 2.0);
    key.position.set(1, -1, 2);
    const fill = new THREE.DirectionalLight(0x8899bb, 0.8);
    fill.position.set(-2, 1, -1);
    this.scene.add(key, fill, new THREE.AmbientLight(0x404040));
    this.scene.add(this.meshGroup, this.overlayGroup);

    const resize = () => {
      const w = container.clientWidth || 600;
      const h = container.clientHeight || 500;
      this.camera.aspect = w / h;
      this.camera.updateProjectionMatrix();
      this.renderer.setSize(w, h);
    };
    resize();
    window.addEventListener("resize", resize);

    const animate = () => {
      requestAnimationFrame(animate);
      this.controls.update();
      this.renderer.render(this.scene, this.camera);
    };
    animate();
  }

  /** Replace the displayed shell with a freshly parsed STL. */
  showMesh(stl: ParsedStl, bend: BendDoc | null): void {
    this.currentStl = stl;
    this.bend = bend;
    this.meshGroup.clear();

    const geometry = new THREE.BufferGeometry();
    geometry.setAttribute("position", new THREE.BufferAttribute(stl.positions, 3));
    geometry.computeVertexNormals();
    const material = new THREE.MeshStandardMaterial({
      color: 0x4f9cf0,
      metalness: 0.1,
      roughness: 0.55,
      side: THREE.DoubleSide,
    });
    this.meshGroup.add(new THREE.Mesh(geometry, material));

    geometry.computeBoundingSphere();
    const sphere = geometry.boundingSphere;
    if (sphere) {
      this.controls.target.copy(sphere.center);
      const dist = sphere.radius * 2.8;
      this.camera.position
        .copy(sphere.center)
        .add(new THREE.Vector3(dist * 0.7, -dist * 0.7, dist * 0.5));
    }
    this.refreshOverlays();
  }

  setSectionPlane(visible: boolean, thetaDeg: number): void {
    this.sectionVisible = visible;
    this.sectionTheta = thetaDeg;
    this.refreshOverlays();
  }

  private refreshOverlays(): void {
    this.overlayGroup.clear();
    if (!this.currentStl) return;

    if (this.sectionVisible) {
      const segments = sectionOutline(this.currentStl, this.sectionTheta);
      const theta = (this.sectionTheta * Math.PI) / 180;
      const dx = Math.cos(theta);
      const dy = Math.sin(theta);
      const pts: number[] = [];
      for (const [r0, z0, r1, z1] of segments) {
        pts.push(r0 * dx, r0 * dy, z0, r1 * dx, r1 * dy, z1);
      }
      const geometry = new THREE.BufferGeometry();
      geometry.setAttribute("position", new THREE.BufferAttribute(new Float32Array(pts), 3));
      this.overlayGroup.add(
        new THREE.LineSegments(geometry, new THREE.LineBasicMaterial({ color: 0xffc940 })),
      );
    }

    if (this.bend) {
      // magnitude indicator: tilt from vertical by theta, drawn in the theta=0 plane
      const theta = (this.bend.theta_deg * Math.PI) / 180;
      const dir = new THREE.Vector3(Math.sin(theta), 0, Math.cos(theta));
      const length = Math.max(this.bend.h_mm, 10);
      const arrow = new THREE.ArrowHelper(
        dir,
        new THREE.Vector3(0, 0, 0),
        length,
        0xff5470,
        length * 0.12,
        length * 0.06,
      );
      this.overlayGroup.add(arrow);
    }
  }
}
