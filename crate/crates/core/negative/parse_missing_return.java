class M { public static void main(String[] a) { } }
class A { int x; public int f() { x = 1; } }
