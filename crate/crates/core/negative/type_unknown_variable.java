class M { public static void main(String[] a) { System.out.println(new A().f()); } }
class A { public int f() { int x; y = 1; return x; } }
