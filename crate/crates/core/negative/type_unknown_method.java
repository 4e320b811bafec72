class M { public static void main(String[] a) { System.out.println(new A().g()); } }
class A { public int f() { return 1; } }
